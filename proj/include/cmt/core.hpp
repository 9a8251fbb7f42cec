#pragma once

#include "cmt/errors.hpp"
#include "cmt/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cmt {

/// Finite set of variables, each with a finite ordered range of value
/// tokens. The declaration order of variables and values is significant:
/// it fixes tuple layouts, enumeration order and printing everywhere.
class Signature {
public:
    Signature(std::vector<std::string> dom, std::vector<std::vector<std::string>> ranges);

    int var_count() const { return static_cast<int>(dom_.size()); }
    const std::vector<std::string>& dom() const { return dom_; }
    const std::string& var_name(int v) const { return dom_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& range(int v) const { return ranges_[static_cast<size_t>(v)]; }
    int range_size(int v) const { return static_cast<int>(ranges_[static_cast<size_t>(v)].size()); }
    const std::string& value_name(int v, int val) const {
        return ranges_[static_cast<size_t>(v)][static_cast<size_t>(val)];
    }

    std::optional<int> var_index(const std::string& name) const;
    std::optional<int> value_index(int var, const std::string& token) const;

    bool operator==(const Signature& o) const { return dom_ == o.dom_ && ranges_ == o.ranges_; }
    bool operator!=(const Signature& o) const { return !(*this == o); }

private:
    std::vector<std::string> dom_;
    std::vector<std::vector<std::string>> ranges_;
    std::map<std::string, int> var_index_;
};

using SigPtr = std::shared_ptr<const Signature>;

/// One row: a value index per variable, in dom order.
using Assignment = std::vector<int>;

using Count = long long;

/// Counted multiset of assignments. Entries always carry count >= 1;
/// the empty map is the empty multiteam.
struct Multiteam {
    std::map<Assignment, Count> counts;

    Count cardinality() const;
    bool empty() const { return counts.empty(); }
    void add(const Assignment& row, Count n);

    bool operator==(const Multiteam& o) const { return counts == o.counts; }
    bool operator!=(const Multiteam& o) const { return !(*this == o); }
};

/// Structural law for one endogenous variable: a total table over the
/// ranges of its argument list. Tables are stored row-major with the last
/// argument varying fastest.
struct CausalFunction {
    int target = -1;
    std::vector<int> args;   // variable indices, strictly increasing (dom order)
    std::vector<int> table;  // size = product of arg range sizes

    size_t table_index(const std::vector<int>& arg_values, const Signature& sig) const;
    int apply_full(const Assignment& row, const Signature& sig) const;
    int apply_args(const std::vector<int>& arg_values, const Signature& sig) const;

    bool operator==(const CausalFunction& o) const {
        return target == o.target && args == o.args && table == o.table;
    }
};

struct FunctionComponent {
    std::map<int, CausalFunction> functions;  // keyed by target variable

    bool has(int var) const { return functions.count(var) != 0; }
    bool operator==(const FunctionComponent& o) const { return functions == o.functions; }
    bool operator!=(const FunctionComponent& o) const { return !(*this == o); }
};

struct CausalGraph {
    std::vector<std::pair<int, int>> edges;  // (parent, child), sorted

    bool operator==(const CausalGraph& o) const { return edges == o.edges; }
};

/// A multiteam paired with laws every row obeys. Immutable once built;
/// `create` enforces compatibility, non-constant laws and an acyclic graph,
/// and stores every law with its dummy arguments removed.
class CausalMultiteam {
public:
    static CausalMultiteam create(SigPtr sig, Multiteam team, FunctionComponent laws);

    /// For rows produced by operations that preserve validity (restriction,
    /// intervention, scaling, enumeration). Skips the checks.
    static CausalMultiteam unchecked(SigPtr sig, Multiteam team, FunctionComponent laws);

    const Signature& sig() const { return *sig_; }
    const SigPtr& sig_ptr() const { return sig_; }
    const Multiteam& team() const { return team_; }
    const FunctionComponent& laws() const { return laws_; }

    Count cardinality() const { return team_.cardinality(); }
    bool empty() const { return team_.empty(); }

    std::vector<int> endogenous() const;
    std::vector<int> exogenous() const;

    bool operator==(const CausalMultiteam& o) const {
        return *sig_ == *o.sig_ && team_ == o.team_ && laws_ == o.laws_;
    }
    bool operator!=(const CausalMultiteam& o) const { return !(*this == o); }

private:
    CausalMultiteam(SigPtr sig, Multiteam team, FunctionComponent laws)
        : sig_(std::move(sig)), team_(std::move(team)), laws_(std::move(laws)) {}

    SigPtr sig_;
    Multiteam team_;
    FunctionComponent laws_;
};

/// Removes every dummy argument: an argument is dummy when no fixing of
/// the others lets it change the output. The returned function computes
/// the same value on every full tuple.
CausalFunction minimize_parents(const CausalFunction& f, const Signature& sig);

/// Edges from minimized parent sets, sorted by (parent, child) in dom order.
CausalGraph causal_graph(const CausalMultiteam& m);

/// Assignments with positive count, in lexicographic order.
std::vector<Assignment> support(const CausalMultiteam& m);

/// Topological order of all variables where parents precede children.
/// Throws CyclicGraph when the minimized parent graph has a cycle.
std::vector<int> topological_order(const FunctionComponent& laws, const Signature& sig);

struct ToleranceViolation {
    Assignment row;
    int variable;
    Count count;  // multiplicity of the offending row
};

/// Checks |s(Y) - F_Y(s)| <= delta for every row and endogenous Y of an
/// unvalidated candidate model. With delta = 0 value tokens are compared
/// for equality; with delta > 0 they must parse as decimals.
std::vector<ToleranceViolation> check_compatibility_tolerant(const Signature& sig,
                                                             const Multiteam& team,
                                                             const FunctionComponent& laws,
                                                             const Rational& delta);

/// Mixed-radix iteration over value tuples: `radices[i]` values in slot i.
/// Starts at all zeros; returns false after the last tuple.
bool next_tuple(std::vector<int>& tuple, const std::vector<int>& radices);

/// Human-readable row, e.g. "(X=0, Y=1)".
std::string format_row(const Assignment& row, const Signature& sig);

} // namespace cmt
