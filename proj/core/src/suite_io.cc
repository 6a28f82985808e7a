#include "swarmcit/suite_io.h"

#include <fstream>
#include <sstream>

#include "swarmcit/errors.h"

namespace swarmcit {

SuiteFormat parse_suite_format(std::string_view name) {
  if (name == "plain") return SuiteFormat::kPlain;
  if (name == "csv") return SuiteFormat::kCsv;
  if (name == "json-lines") return SuiteFormat::kJsonLines;
  throw Error("unknown suite format '" + std::string(name) +
              "' (expected plain, csv or json-lines)");
}

std::string format_suite(const TestSuite& suite, const SystemModel& model,
                         SuiteFormat format) {
  std::ostringstream out;
  const int k = model.parameter_count();
  auto join = [&](const TestCase& row, char sep) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << sep;
      out << row[i];
    }
  };
  switch (format) {
    case SuiteFormat::kPlain:
      out << suite.size() << ' ' << k << ' ' << model.strength() << '\n';
      for (const auto& row : suite.rows) {
        join(row, ' ');
        out << '\n';
      }
      break;
    case SuiteFormat::kCsv:
      for (int p = 0; p < k; ++p) out << (p > 0 ? ",p" : "p") << p;
      out << '\n';
      for (const auto& row : suite.rows) {
        join(row, ',');
        out << '\n';
      }
      break;
    case SuiteFormat::kJsonLines:
      for (const auto& row : suite.rows) {
        out << '[';
        join(row, ',');
        out << "]\n";
      }
      break;
  }
  return out.str();
}

TestSuite parse_suite(std::string_view text, const SystemModel& model) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++number;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(1, 0, "empty suite file");
  std::istringstream header(line);
  long long n = -1;
  int k = -1;
  int t = -1;
  std::string extra;
  if (!(header >> n >> k >> t) || (header >> extra) || n < 0) {
    throw ParseError(number, 0, "expected header 'N k t'");
  }
  if (k != model.parameter_count()) {
    throw ParseError(number, 0,
                     "suite has k=" + std::to_string(k) + " but the model has k=" +
                         std::to_string(model.parameter_count()));
  }

  TestSuite suite;
  for (long long r = 0; r < n; ++r) {
    if (!next_line()) {
      throw ParseError(number + 1, 0,
                       "expected " + std::to_string(n) + " rows, found " +
                           std::to_string(r));
    }
    std::istringstream fields(line);
    std::vector<int> values;
    int v = 0;
    while (fields >> v) values.push_back(v);
    if (!fields.eof()) throw ParseError(number, 0, "non-integer value in row");
    if (!model.accepts(values)) {
      throw ParseError(number, 0, "row does not fit the model");
    }
    suite.rows.emplace_back(std::move(values));
  }
  if (next_line()) throw ParseError(number, 0, "more rows than the header declares");
  return suite;
}

TestSuite load_suite(const std::filesystem::path& path, const SystemModel& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open suite file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_suite(buffer.str(), model);
}

}  // namespace swarmcit
