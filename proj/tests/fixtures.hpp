#pragma once

#include "cmt/core.hpp"

#include <initializer_list>
#include <utility>

namespace fixtures {

using namespace cmt;

inline SigPtr make_sig(std::vector<std::pair<std::string, std::vector<std::string>>> decl) {
    std::vector<std::string> dom;
    std::vector<std::vector<std::string>> ranges;
    for (auto& [var, range] : decl) {
        dom.push_back(var);
        ranges.push_back(range);
    }
    return std::make_shared<Signature>(std::move(dom), std::move(ranges));
}

inline Assignment row_of(const Signature& sig,
                         std::initializer_list<std::pair<const char*, const char*>> values) {
    Assignment row(static_cast<size_t>(sig.var_count()), -1);
    for (const auto& [var, value] : values) {
        int v = *sig.var_index(var);
        row[static_cast<size_t>(v)] = *sig.value_index(v, value);
    }
    return row;
}

inline CausalFunction table_fn(const Signature& sig, const char* target,
                               std::vector<const char*> args, std::vector<const char*> outputs) {
    CausalFunction f;
    f.target = *sig.var_index(target);
    for (const char* a : args) f.args.push_back(*sig.var_index(a));
    for (const char* out : outputs) f.table.push_back(*sig.value_index(f.target, out));
    return f;
}

/// Increment chain: Y := X + 1 with rows (0,1)x1 (1,2)x2 (2,3)x3.
inline SigPtr inc_sig() {
    return make_sig({{"X", {"0", "1", "2"}}, {"Y", {"1", "2", "3"}}});
}

inline CausalMultiteam inc_model() {
    SigPtr sig = inc_sig();
    Multiteam team;
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "1"}}), 1);
    team.add(row_of(*sig, {{"X", "1"}, {"Y", "2"}}), 2);
    team.add(row_of(*sig, {{"X", "2"}, {"Y", "3"}}), 3);
    FunctionComponent laws;
    laws.functions.emplace(*sig->var_index("Y"), table_fn(*sig, "Y", {"X"}, {"1", "2", "3"}));
    return CausalMultiteam::create(sig, std::move(team), std::move(laws));
}

/// Two fair coins: every (X,Y) combination once, no laws.
inline SigPtr coin_sig() {
    return make_sig({{"X", {"heads", "tails"}}, {"Y", {"heads", "tails"}}});
}

inline CausalMultiteam coin_model() {
    SigPtr sig = coin_sig();
    Multiteam team;
    for (const char* x : {"heads", "tails"})
        for (const char* y : {"heads", "tails"}) team.add(row_of(*sig, {{"X", x}, {"Y", y}}), 1);
    return CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
}

/// Three records over two binary variables: (0,0) twice, (0,1) once.
inline SigPtr bin_sig() {
    return make_sig({{"X", {"0", "1"}}, {"Y", {"0", "1"}}});
}

inline CausalMultiteam s3_model() {
    SigPtr sig = bin_sig();
    Multiteam team;
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "0"}}), 2);
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "1"}}), 1);
    return CausalMultiteam::create(sig, std::move(team), FunctionComponent{});
}

/// Y mirrors X, one row each of (0,0) and (1,1).
inline CausalMultiteam mirror_model() {
    SigPtr sig = bin_sig();
    Multiteam team;
    team.add(row_of(*sig, {{"X", "0"}, {"Y", "0"}}), 1);
    team.add(row_of(*sig, {{"X", "1"}, {"Y", "1"}}), 1);
    FunctionComponent laws;
    laws.functions.emplace(*sig->var_index("Y"), table_fn(*sig, "Y", {"X"}, {"0", "1"}));
    return CausalMultiteam::create(sig, std::move(team), std::move(laws));
}

inline CausalMultiteam empty_model(SigPtr sig) {
    return CausalMultiteam::create(std::move(sig), Multiteam{}, FunctionComponent{});
}

} // namespace fixtures
