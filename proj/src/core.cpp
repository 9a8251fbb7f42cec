#include "cmt/core.hpp"

#include <algorithm>
#include <numeric>

namespace cmt {

Signature::Signature(std::vector<std::string> dom, std::vector<std::vector<std::string>> ranges)
    : dom_(std::move(dom)), ranges_(std::move(ranges)) {
    if (dom_.empty()) throw ModelError("signature must declare at least one variable");
    if (dom_.size() != ranges_.size())
        throw ModelError("signature declares " + std::to_string(dom_.size()) + " variables but " +
                         std::to_string(ranges_.size()) + " ranges");
    for (size_t i = 0; i < dom_.size(); ++i) {
        if (ranges_[i].empty()) throw ModelError("empty range for variable '" + dom_[i] + "'");
        if (!var_index_.emplace(dom_[i], static_cast<int>(i)).second)
            throw ModelError("duplicate variable '" + dom_[i] + "'");
        for (size_t a = 0; a < ranges_[i].size(); ++a)
            for (size_t b = a + 1; b < ranges_[i].size(); ++b)
                if (ranges_[i][a] == ranges_[i][b])
                    throw ModelError("duplicate value '" + ranges_[i][a] + "' in range of '" + dom_[i] + "'");
    }
}

std::optional<int> Signature::var_index(const std::string& name) const {
    auto it = var_index_.find(name);
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Signature::value_index(int var, const std::string& token) const {
    const auto& range = ranges_[static_cast<size_t>(var)];
    for (size_t i = 0; i < range.size(); ++i)
        if (range[i] == token) return static_cast<int>(i);
    return std::nullopt;
}

Count Multiteam::cardinality() const {
    Count total = 0;
    for (const auto& [row, n] : counts) total += n;
    return total;
}

void Multiteam::add(const Assignment& row, Count n) {
    if (n <= 0) throw ModelError("row multiplicity must be positive");
    counts[row] += n;
}

size_t CausalFunction::table_index(const std::vector<int>& arg_values, const Signature& sig) const {
    size_t idx = 0;
    for (size_t i = 0; i < args.size(); ++i)
        idx = idx * static_cast<size_t>(sig.range_size(args[i])) + static_cast<size_t>(arg_values[i]);
    return idx;
}

int CausalFunction::apply_full(const Assignment& row, const Signature& sig) const {
    size_t idx = 0;
    for (int a : args)
        idx = idx * static_cast<size_t>(sig.range_size(a)) + static_cast<size_t>(row[static_cast<size_t>(a)]);
    return table[idx];
}

int CausalFunction::apply_args(const std::vector<int>& arg_values, const Signature& sig) const {
    return table[table_index(arg_values, sig)];
}

bool next_tuple(std::vector<int>& tuple, const std::vector<int>& radices) {
    for (size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < radices[i]) return true;
        tuple[i] = 0;
    }
    return false;
}

std::string format_row(const Assignment& row, const Signature& sig) {
    std::string out = "(";
    for (int v = 0; v < sig.var_count(); ++v) {
        if (v > 0) out += ", ";
        out += sig.var_name(v) + "=" + sig.value_name(v, row[static_cast<size_t>(v)]);
    }
    return out + ")";
}

namespace {

void validate_function_shape(const CausalFunction& f, const Signature& sig) {
    const std::string& name = sig.var_name(f.target);
    std::vector<int> seen;
    for (int a : f.args) {
        if (a == f.target) throw ModelError("law for " + name + " lists its own target as argument");
        if (a < 0 || a >= sig.var_count()) throw ModelError("law for " + name + " has an unknown argument");
        seen.push_back(a);
    }
    if (!std::is_sorted(seen.begin(), seen.end()) ||
        std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw ModelError("law for " + name + " must list arguments once each, in dom order");
    size_t expected = 1;
    for (int a : f.args) expected *= static_cast<size_t>(sig.range_size(a));
    if (f.table.size() != expected)
        throw ModelError("law for " + name + " has a partial table (" +
                         std::to_string(f.table.size()) + " of " + std::to_string(expected) + " entries)");
    for (int out : f.table)
        if (out < 0 || out >= sig.range_size(f.target))
            throw RangeError(name, std::to_string(out));
}

void validate_rows(const Multiteam& team, const Signature& sig) {
    for (const auto& [row, n] : team.counts) {
        if (n <= 0) throw ModelError("nonpositive multiplicity");
        if (static_cast<int>(row.size()) != sig.var_count())
            throw ModelError("row arity does not match the signature");
        for (int v = 0; v < sig.var_count(); ++v) {
            int val = row[static_cast<size_t>(v)];
            if (val < 0 || val >= sig.range_size(v))
                throw RangeError(sig.var_name(v), std::to_string(val));
        }
    }
}

} // namespace

CausalFunction minimize_parents(const CausalFunction& f, const Signature& sig) {
    std::vector<int> radices;
    radices.reserve(f.args.size());
    for (int a : f.args) radices.push_back(sig.range_size(a));

    std::vector<bool> needed(f.args.size(), false);
    std::vector<int> tuple(f.args.size(), 0);
    if (!f.args.empty()) {
        do {
            int base = f.table[f.table_index(tuple, sig)];
            for (size_t k = 0; k < f.args.size(); ++k) {
                if (needed[k]) continue;
                std::vector<int> probe = tuple;
                for (int v = 0; v < radices[k]; ++v) {
                    probe[k] = v;
                    if (f.table[f.table_index(probe, sig)] != base) {
                        needed[k] = true;
                        break;
                    }
                }
            }
        } while (next_tuple(tuple, radices));
    }

    CausalFunction out;
    out.target = f.target;
    std::vector<int> kept_pos;
    for (size_t k = 0; k < f.args.size(); ++k)
        if (needed[k]) {
            out.args.push_back(f.args[k]);
            kept_pos.push_back(static_cast<int>(k));
        }

    std::vector<int> out_radices;
    for (int a : out.args) out_radices.push_back(sig.range_size(a));
    std::vector<int> out_tuple(out.args.size(), 0);
    std::vector<int> full(f.args.size(), 0);  // dummies pinned at value 0
    do {
        for (size_t i = 0; i < kept_pos.size(); ++i) full[static_cast<size_t>(kept_pos[i])] = out_tuple[i];
        out.table.push_back(f.table[f.table_index(full, sig)]);
    } while (next_tuple(out_tuple, out_radices));
    return out;
}

std::vector<int> topological_order(const FunctionComponent& laws, const Signature& sig) {
    int n = sig.var_count();
    std::vector<std::vector<int>> children(static_cast<size_t>(n));
    std::vector<int> indegree(static_cast<size_t>(n), 0);
    for (const auto& [target, f] : laws.functions) {
        indegree[static_cast<size_t>(target)] = static_cast<int>(f.args.size());
        for (int p : f.args) children[static_cast<size_t>(p)].push_back(target);
    }
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<int> ready;
    for (int v = n - 1; v >= 0; --v)
        if (indegree[static_cast<size_t>(v)] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (int c : children[static_cast<size_t>(v)])
            if (--indegree[static_cast<size_t>(c)] == 0) ready.push_back(c);
    }
    if (static_cast<int>(order.size()) != n) {
        std::string cycle;
        for (int v = 0; v < n; ++v)
            if (indegree[static_cast<size_t>(v)] > 0) {
                if (!cycle.empty()) cycle += ", ";
                cycle += sig.var_name(v);
            }
        throw CyclicGraph(cycle);
    }
    return order;
}

CausalMultiteam CausalMultiteam::create(SigPtr sig, Multiteam team, FunctionComponent laws) {
    validate_rows(team, *sig);

    FunctionComponent minimized;
    for (const auto& [target, f] : laws.functions) {
        if (target < 0 || target >= sig->var_count())
            throw ModelError("law declared for an unknown variable");
        if (f.target != target) throw ModelError("law keyed under the wrong variable");
        validate_function_shape(f, *sig);
        CausalFunction min = minimize_parents(f, *sig);
        if (min.args.empty()) throw ConstantFunction(sig->var_name(target));
        minimized.functions.emplace(target, std::move(min));
    }

    topological_order(minimized, *sig);  // throws on cycles

    for (const auto& [row, n] : team.counts) {
        (void)n;
        for (const auto& [target, f] : minimized.functions)
            if (row[static_cast<size_t>(target)] != f.apply_full(row, *sig))
                throw CompatibilityViolation(format_row(row, *sig), sig->var_name(target));
    }

    return CausalMultiteam(std::move(sig), std::move(team), std::move(minimized));
}

CausalMultiteam CausalMultiteam::unchecked(SigPtr sig, Multiteam team, FunctionComponent laws) {
    return CausalMultiteam(std::move(sig), std::move(team), std::move(laws));
}

std::vector<int> CausalMultiteam::endogenous() const {
    std::vector<int> out;
    for (const auto& [target, f] : laws_.functions) {
        (void)f;
        out.push_back(target);
    }
    return out;
}

std::vector<int> CausalMultiteam::exogenous() const {
    std::vector<int> out;
    for (int v = 0; v < sig_->var_count(); ++v)
        if (!laws_.has(v)) out.push_back(v);
    return out;
}

CausalGraph causal_graph(const CausalMultiteam& m) {
    CausalGraph g;
    for (const auto& [target, f] : m.laws().functions)
        for (int p : f.args) g.edges.emplace_back(p, target);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

std::vector<Assignment> support(const CausalMultiteam& m) {
    std::vector<Assignment> out;
    out.reserve(m.team().counts.size());
    for (const auto& [row, n] : m.team().counts) {
        (void)n;
        out.push_back(row);
    }
    return out;
}

std::vector<ToleranceViolation> check_compatibility_tolerant(const Signature& sig,
                                                             const Multiteam& team,
                                                             const FunctionComponent& laws,
                                                             const Rational& delta) {
    if (delta < Rational(0)) throw ModelError("tolerance must be nonnegative");
    validate_rows(team, sig);

    FunctionComponent minimized;
    for (const auto& [target, f] : laws.functions) {
        validate_function_shape(f, sig);
        CausalFunction min = minimize_parents(f, sig);
        if (min.args.empty()) throw ConstantFunction(sig.var_name(target));
        minimized.functions.emplace(target, std::move(min));
    }
    topological_order(minimized, sig);

    const bool numeric = delta > Rational(0);
    auto as_rational = [&](int var, int val) {
        const std::string& token = sig.value_name(var, val);
        auto r = Rational::parse(token);
        if (!r) throw NonNumericValue(sig.var_name(var), token);
        return *r;
    };

    std::vector<ToleranceViolation> violations;
    for (const auto& [row, n] : team.counts) {
        for (const auto& [target, f] : minimized.functions) {
            int actual = row[static_cast<size_t>(target)];
            int predicted = f.apply_full(row, sig);
            bool bad;
            if (numeric)
                bad = (as_rational(target, actual) - as_rational(target, predicted)).abs() > delta;
            else
                bad = actual != predicted;
            if (bad) violations.push_back({row, target, n});
        }
    }
    return violations;
}

} // namespace cmt
