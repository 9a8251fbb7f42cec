#include "cmt/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cmt {

using json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string token_of(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_float()) {
        std::ostringstream out;
        out << j.get<double>();
        return out.str();
    }
    throw Error("expected a value token, got " + j.dump());
}

SigPtr read_signature(const json& j) {
    if (!j.is_object() || j.empty()) throw Error("\"signature\" must be a nonempty object");
    std::vector<std::string> dom;
    std::vector<std::vector<std::string>> ranges;
    for (const auto& [var, values] : j.items()) {
        dom.push_back(var);
        if (!values.is_array() || values.empty())
            throw Error("range of '" + var + "' must be a nonempty array");
        std::vector<std::string> range;
        for (const auto& v : values) range.push_back(token_of(v));
        ranges.push_back(std::move(range));
    }
    return std::make_shared<Signature>(std::move(dom), std::move(ranges));
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

FunctionComponent read_functions(const json& j, const Signature& sig) {
    FunctionComponent laws;
    if (j.is_null()) return laws;
    if (!j.is_object()) throw Error("\"functions\" must be an object");
    for (const auto& [name, law] : j.items()) {
        auto target = sig.var_index(name);
        if (!target) throw Error("law for unknown variable '" + name + "'");
        CausalFunction f;
        f.target = *target;
        if (!law.contains("args") || !law["args"].is_array())
            throw Error("law for '" + name + "' needs an \"args\" array");
        std::vector<int> declared;
        for (const auto& a : law["args"]) {
            auto idx = sig.var_index(token_of(a));
            if (!idx) throw Error("law for '" + name + "' uses unknown argument " + a.dump());
            declared.push_back(*idx);
        }
        // table keys are written in declared order; storage is dom order
        std::vector<size_t> dom_order_of;
        {
            std::vector<std::pair<int, size_t>> sorted;
            for (size_t i = 0; i < declared.size(); ++i) sorted.emplace_back(declared[i], i);
            std::sort(sorted.begin(), sorted.end());
            for (size_t i = 0; i + 1 < sorted.size(); ++i)
                if (sorted[i].first == sorted[i + 1].first)
                    throw Error("law for '" + name + "' repeats an argument");
            for (const auto& [var, pos] : sorted) {
                f.args.push_back(var);
                dom_order_of.push_back(pos);
            }
        }

        if (!law.contains("table") || !law["table"].is_object())
            throw Error("law for '" + name + "' needs a \"table\" object");
        size_t expected = 1;
        for (int a : f.args) expected *= static_cast<size_t>(sig.range_size(a));
        f.table.assign(expected, -1);
        for (const auto& [key, outj] : law["table"].items()) {
            std::vector<std::string> parts = declared.empty() && key.empty()
                                                 ? std::vector<std::string>{}
                                                 : split_key(key);
            if (parts.size() != declared.size())
                throw Error("table key '" + key + "' of '" + name + "' has the wrong arity");
            std::vector<int> arg_values(f.args.size(), -1);
            for (size_t i = 0; i < f.args.size(); ++i) {
                const std::string& tok = parts[dom_order_of[i]];
                auto val = sig.value_index(f.args[i], tok);
                if (!val) throw RangeError(sig.var_name(f.args[i]), tok);
                arg_values[i] = *val;
            }
            std::string out_tok = token_of(outj);
            auto out = sig.value_index(*target, out_tok);
            if (!out) throw RangeError(name, out_tok);
            f.table[f.table_index(arg_values, sig)] = *out;
        }
        for (int entry : f.table)
            if (entry < 0)
                throw Error("law for '" + name + "' has a partial table");
        laws.functions.emplace(*target, std::move(f));
    }
    return laws;
}

Assignment read_assignment(const json& j, const Signature& sig) {
    if (!j.is_object()) throw Error("\"assignment\" must be an object");
    Assignment row(static_cast<size_t>(sig.var_count()), -1);
    for (const auto& [var, valj] : j.items()) {
        auto idx = sig.var_index(var);
        if (!idx) throw Error("row mentions unknown variable '" + var + "'");
        std::string tok = token_of(valj);
        auto val = sig.value_index(*idx, tok);
        if (!val) throw RangeError(var, tok);
        row[static_cast<size_t>(*idx)] = *val;
    }
    for (int v = 0; v < sig.var_count(); ++v)
        if (row[static_cast<size_t>(v)] < 0)
            throw Error("row misses variable '" + sig.var_name(v) + "'");
    return row;
}

json write_signature(const Signature& sig) {
    json out = json::object();
    for (int v = 0; v < sig.var_count(); ++v) {
        json range = json::array();
        for (const auto& tok : sig.range(v)) range.push_back(tok);
        out[sig.var_name(v)] = std::move(range);
    }
    return out;
}

json write_functions(const FunctionComponent& laws, const Signature& sig) {
    json out = json::object();
    for (const auto& [target, f] : laws.functions) {
        json law = json::object();
        json args = json::array();
        for (int a : f.args) args.push_back(sig.var_name(a));
        law["args"] = std::move(args);
        json table = json::object();
        std::vector<int> radices;
        for (int a : f.args) radices.push_back(sig.range_size(a));
        std::vector<int> tuple(f.args.size(), 0);
        do {
            std::string key;
            for (size_t i = 0; i < f.args.size(); ++i) {
                if (i) key += ",";
                key += sig.value_name(f.args[i], tuple[i]);
            }
            table[key] = sig.value_name(target, f.apply_args(tuple, sig));
        } while (next_tuple(tuple, radices));
        law["table"] = std::move(table);
        out[sig.var_name(target)] = std::move(law);
    }
    return out;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("malformed JSON");
    return j;
}

CausalMultiteam model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("signature"))
        throw Error("model file needs a \"signature\" object");
    SigPtr sig = read_signature(j["signature"]);
    FunctionComponent laws =
        j.contains("functions") ? read_functions(j["functions"], *sig) : FunctionComponent{};
    Multiteam team;
    if (j.contains("rows")) {
        if (!j["rows"].is_array()) throw Error("\"rows\" must be an array");
        for (const auto& rowj : j["rows"]) {
            Count count = 1;
            if (rowj.contains("count")) {
                if (!rowj["count"].is_number_integer())
                    throw Error("row count must be an integer");
                count = rowj["count"].get<Count>();
            }
            if (!rowj.contains("assignment")) throw Error("row needs an \"assignment\"");
            team.add(read_assignment(rowj["assignment"], *sig), count);
        }
    }
    return CausalMultiteam::create(std::move(sig), std::move(team), std::move(laws));
}

} // namespace

CausalMultiteam parse_model_json(const std::string& text) {
    return model_from_json(parse_text(text));
}

SigPtr load_signature(const std::string& path) {
    json j = parse_text(slurp(path));
    if (j.is_object() && j.contains("signature")) return read_signature(j["signature"]);
    return read_signature(j);
}

CausalMultiteam load_model(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return load_csv_model(path);
    return parse_model_json(slurp(path));
}

std::string model_to_json(const CausalMultiteam& m) {
    json out = json::object();
    out["signature"] = write_signature(m.sig());
    out["functions"] = write_functions(m.laws(), m.sig());
    json rows = json::array();
    for (const auto& [row, n] : m.team().counts) {
        json assignment = json::object();
        for (int v = 0; v < m.sig().var_count(); ++v)
            assignment[m.sig().var_name(v)] = m.sig().value_name(v, row[static_cast<size_t>(v)]);
        rows.push_back(json{{"assignment", std::move(assignment)}, {"count", n}});
    }
    out["rows"] = std::move(rows);
    return out.dump(2);
}

Sem parse_sem_json(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("signature"))
        throw Error("SEM file needs a \"signature\" object");
    SigPtr sig = read_signature(j["signature"]);
    FunctionComponent laws =
        j.contains("functions") ? read_functions(j["functions"], *sig) : FunctionComponent{};

    std::vector<int> exo;
    for (int v = 0; v < sig->var_count(); ++v)
        if (!laws.has(v)) exo.push_back(v);

    if (!j.contains("exo_dist") || !j["exo_dist"].is_array())
        throw Error("SEM file needs an \"exo_dist\" array");
    std::map<Assignment, Rational> dist;
    for (const auto& entry : j["exo_dist"]) {
        if (!entry.contains("u") || !entry.contains("p"))
            throw Error("every exo_dist entry needs \"u\" and \"p\"");
        Assignment u(exo.size(), -1);
        for (const auto& [var, valj] : entry["u"].items()) {
            auto idx = sig->var_index(var);
            if (!idx) throw Error("exo_dist mentions unknown variable '" + var + "'");
            size_t slot = exo.size();
            for (size_t i = 0; i < exo.size(); ++i)
                if (exo[i] == *idx) slot = i;
            if (slot == exo.size()) throw Error("'" + var + "' is endogenous, not exogenous");
            std::string tok = token_of(valj);
            auto val = sig->value_index(*idx, tok);
            if (!val) throw RangeError(var, tok);
            u[slot] = *val;
        }
        for (size_t i = 0; i < exo.size(); ++i)
            if (u[i] < 0) throw Error("exo_dist tuple misses '" + sig->var_name(exo[i]) + "'");
        auto p = Rational::parse(token_of(entry["p"]));
        if (!p) throw Error("cannot read weight " + entry["p"].dump());
        auto [it, fresh] = dist.emplace(u, *p);
        if (!fresh) it->second += *p;
    }
    return make_sem(std::move(sig), std::move(laws), std::move(dist));
}

Sem load_sem(const std::string& path) { return parse_sem_json(slurp(path)); }

std::string sem_to_json(const Sem& sem) {
    json out = json::object();
    out["signature"] = write_signature(*sem.sig);
    out["functions"] = write_functions(sem.laws, *sem.sig);
    json dist = json::array();
    std::vector<int> exo = sem.exo_vars();
    for (const auto& [u, p] : sem.exo_dist) {
        json uj = json::object();
        for (size_t i = 0; i < exo.size(); ++i)
            uj[sem.sig->var_name(exo[i])] = sem.sig->value_name(exo[i], u[i]);
        dist.push_back(json{{"u", std::move(uj)}, {"p", p.str()}});
    }
    out["exo_dist"] = std::move(dist);
    return out.dump(2);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    for (auto& cell : cells) {
        size_t a = cell.find_first_not_of(" \t");
        size_t b = cell.find_last_not_of(" \t");
        cell = a == std::string::npos ? "" : cell.substr(a, b - a + 1);
    }
    return cells;
}

} // namespace

CausalMultiteam load_csv_model(const std::string& csv_path, const std::string& sidecar_path) {
    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV file");
    std::vector<std::string> header = split_csv_line(line);
    std::vector<std::vector<std::string>> data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw Error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
        data.push_back(std::move(cells));
    }

    SigPtr sig;
    FunctionComponent laws;
    if (!sidecar_path.empty()) {
        json j = parse_text(slurp(sidecar_path));
        if (!j.contains("signature")) throw Error("sidecar needs a \"signature\"");
        sig = read_signature(j["signature"]);
        if (j.contains("functions")) laws = read_functions(j["functions"], *sig);
    } else {
        // infer: observed values in first-occurrence order, all exogenous
        std::vector<std::vector<std::string>> ranges(header.size());
        for (const auto& cells : data)
            for (size_t i = 0; i < cells.size(); ++i) {
                auto& range = ranges[i];
                if (std::find(range.begin(), range.end(), cells[i]) == range.end())
                    range.push_back(cells[i]);
            }
        for (size_t i = 0; i < ranges.size(); ++i)
            if (ranges[i].empty()) ranges[i].push_back("0");
        sig = std::make_shared<Signature>(header, std::move(ranges));
    }

    std::vector<int> column_var(header.size());
    for (size_t i = 0; i < header.size(); ++i) {
        auto idx = sig->var_index(header[i]);
        if (!idx) throw Error("CSV column '" + header[i] + "' not in the signature");
        column_var[i] = *idx;
    }

    Multiteam team;
    for (const auto& cells : data) {
        Assignment row(static_cast<size_t>(sig->var_count()), -1);
        for (size_t i = 0; i < cells.size(); ++i) {
            auto val = sig->value_index(column_var[i], cells[i]);
            if (!val) throw RangeError(header[i], cells[i]);
            row[static_cast<size_t>(column_var[i])] = *val;
        }
        for (int v = 0; v < sig->var_count(); ++v)
            if (row[static_cast<size_t>(v)] < 0)
                throw Error("CSV misses a column for '" + sig->var_name(v) + "'");
        team.add(row, 1);
    }
    return CausalMultiteam::create(std::move(sig), std::move(team), std::move(laws));
}

FiniteClass load_class(const std::string& path) {
    json j = parse_text(slurp(path));
    if (!j.is_array()) throw Error("class file must be a JSON array");
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<CausalMultiteam> members;
    for (const auto& entry : j) {
        if (entry.is_string()) {
            std::filesystem::path p = entry.get<std::string>();
            if (p.is_relative()) p = base / p;
            members.push_back(load_model(p.string()));
        } else {
            members.push_back(model_from_json(entry));
        }
    }
    return FiniteClass(std::move(members));
}

} // namespace cmt
