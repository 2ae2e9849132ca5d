#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "psmod1/diophantine.hpp"
#include "psmod1/experiments.hpp"
#include "psmod1/expsum.hpp"

namespace psmod1 {

inline constexpr const char* kVersion = "0.1.0";

/// Effective configuration echoed at the top of every output file, in insertion order.
using Header = std::vector<std::pair<std::string, std::string>>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

/// Shortest round-trip rendering; identical inputs give identical text.
std::string format_cell(const nlohmann::json& cell);

/// "# psmod1 version=..." and one "# key=value" line per header entry, then the table.
void write_csv(std::ostream& out, const Header& header, const Table& table);
/// {"version", "config", "columns", "records": [{column: value}]}
void write_json(std::ostream& out, const Header& header, const Table& table);

Table to_table(const TheoremReport& r);
Table witnesses_table(const TheoremReport& r);
Table to_table(const std::vector<MinimaRecord>& records);
Table to_table(const UpsilonReport& r);
Table to_table(const std::vector<CountingRow>& rows);
Table to_table(const ExpSumReport& r);
Table to_table(const DecomposedGammaStar& r);
Table to_table(const ConvergentTable& t);

}  // namespace psmod1
