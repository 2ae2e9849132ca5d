#include "psmod1/report.hpp"

#include <ostream>

namespace psmod1 {

using nlohmann::json;

namespace {

json optional_cell(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json optional_cell(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_cell(const json& cell) {
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_null()) return "";
    return cell.dump();
}

void write_csv(std::ostream& out, const Header& header, const Table& table) {
    out << "# psmod1 version=" << kVersion << '\n';
    for (const auto& [k, v] : header) out << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
        out << '\n';
    }
}

void write_json(std::ostream& out, const Header& header, const Table& table) {
    json config = json::object();
    for (const auto& [k, v] : header) config[k] = v;
    json records = json::array();
    for (const auto& row : table.rows) {
        json rec = json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) rec[table.columns[i]] = row[i];
        records.push_back(std::move(rec));
    }
    json doc = {{"version", kVersion}, {"config", config}, {"columns", table.columns}, {"records", records}};
    out << doc.dump(2) << '\n';
}

Table to_table(const TheoremReport& r) {
    return {{"theta", "epsilon", "limit", "witness_count", "total_intersection_primes"},
            {{r.theta, r.epsilon, r.limit, r.witness_count, r.total_intersection_primes}}};
}

Table witnesses_table(const TheoremReport& r) {
    Table t{{"p", "n1", "n2", "value"}, {}};
    for (const auto& w : r.sample_witnesses)
        t.rows.push_back({w.p, optional_cell(w.n1), optional_cell(w.n2), optional_cell(w.frac_value)});
    return t;
}

Table to_table(const std::vector<MinimaRecord>& records) {
    Table t{{"rank", "p", "value"}, {}};
    for (const auto& m : records) t.rows.push_back({m.rank, m.p, m.value});
    return t;
}

Table to_table(const UpsilonReport& r) {
    return {{"N", "delta", "T", "total", "upsilon1", "upsilon2", "upsilon3", "upsilon4", "parts_sum",
             "identity_error"},
            {{r.N, r.delta, r.T, r.total, r.parts[0], r.parts[1], r.parts[2], r.parts[3], r.parts_sum(),
              r.identity_error()}}};
}

Table to_table(const std::vector<CountingRow>& rows) {
    Table t{{"x", "count", "main_term", "ratio"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.x, r.count, r.main_term, r.ratio});
    return t;
}

Table to_table(const ExpSumReport& r) {
    Table t{{"re", "im", "modulus", "n_terms", "max_weight", "theoretical_bound", "ratio", "weyl_bound"}, {}};
    std::vector<json> row{r.value.real(), r.value.imag(), r.modulus, r.n_terms, r.max_weight,
                          optional_cell(r.theoretical_bound), optional_cell(r.ratio), optional_cell(r.weyl_bound)};
    for (const auto& [k, v] : r.params) {
        t.columns.push_back(k);
        row.emplace_back(v);
    }
    t.rows.push_back(std::move(row));
    return t;
}

Table to_table(const DecomposedGammaStar& r) {
    return {{"re", "im", "modulus", "boxes", "case1", "case2", "case3", "case4"},
            {{r.value.real(), r.value.imag(), std::abs(r.value), r.boxes, r.case_counts[0], r.case_counts[1],
              r.case_counts[2], r.case_counts[3]}}};
}

Table to_table(const ConvergentTable& t) {
    Table out{{"a", "q", "quality"}, {}};
    for (const auto& c : t.items) out.rows.push_back({c.a, c.q, c.quality});
    return out;
}

}  // namespace psmod1
