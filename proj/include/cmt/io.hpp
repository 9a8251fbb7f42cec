#pragma once

#include "cmt/core.hpp"
#include "cmt/rescaling.hpp"
#include "cmt/sem_bridge.hpp"

#include <iosfwd>
#include <string>

namespace cmt {

// Model file layout:
//   {"signature": {"X": ["0","1"], ...},
//    "functions": {"Y": {"args": ["X"], "table": {"0": "1", ...}}, ...},
//    "rows": [{"assignment": {"X": "0", "Y": "1"}, "count": 2}, ...]}
// Table keys are the argument values joined with commas, in declared
// argument order. Key order of "signature" fixes the variable order.

CausalMultiteam load_model(const std::string& path);

/// Reads just a signature: either a bare {"X": [...]} object or any file
/// with a "signature" member.
SigPtr load_signature(const std::string& path);
CausalMultiteam parse_model_json(const std::string& text);
std::string model_to_json(const CausalMultiteam& m);

// SEM file: signature and functions as above, plus
//   "exo_dist": [{"u": {"X": "0"}, "p": "1/6"}, ...]

Sem load_sem(const std::string& path);
Sem parse_sem_json(const std::string& text);
std::string sem_to_json(const Sem& sem);

// CSV rows: header names the variables, each data row counts once,
// duplicates aggregate. Laws and declared ranges come from a sidecar model
// file (without rows); absent a sidecar all variables are exogenous and
// ranges are the observed values in first-occurrence order.

CausalMultiteam load_csv_model(const std::string& csv_path, const std::string& sidecar_path = "");

// Class file: a JSON array whose entries are model objects or paths
// (resolved relative to the class file).

FiniteClass load_class(const std::string& path);

} // namespace cmt
