#include "swarmcit/model_io.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "swarmcit/errors.h"

namespace swarmcit {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based physical line
  std::string_view content;
  std::vector<Token> tokens;
};

constexpr int kMaxParameters = 100000;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> split_tokens(std::string_view content) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < content.size()) {
    while (i < content.size() && is_space(content[i])) ++i;
    std::size_t start = i;
    while (i < content.size() && !is_space(content[i])) ++i;
    if (i > start) tokens.push_back({content.substr(start, i - start), start + 1});
  }
  return tokens;
}

// Logical lines: comments stripped, blank lines dropped.
std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    auto tokens = split_tokens(raw);
    if (!tokens.empty()) lines.push_back({number, raw, std::move(tokens)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

int expect_int(const Line& line, const Token& token, const char* what) {
  auto value = to_int(token.text);
  if (!value) {
    throw ParseError(line.number, token.column,
                     std::string("expected integer ") + what + ", found '" +
                         std::string(token.text) + "'");
  }
  return *value;
}

int single_int(const Line& line, const char* what) {
  if (line.tokens.size() != 1) {
    throw ParseError(line.number, line.tokens[1].column,
                     std::string("unexpected token after ") + what);
  }
  return expect_int(line, line.tokens[0], what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

struct RawLiteral {
  int param;
  std::string_view value;
  std::size_t line;
  std::size_t column;
};

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  const Line& next(const char* expecting) {
    if (index_ >= lines_.size()) {
      std::size_t last = lines_.empty() ? 1 : lines_.back().number + 1;
      throw ParseError(last, 0,
                       std::string("unexpected end of input, expected ") +
                           expecting);
    }
    return lines_[index_++];
  }
  bool done() const { return index_ >= lines_.size(); }

 private:
  std::vector<Line> lines_;
  std::size_t index_ = 0;
};

}  // namespace

SystemModel parse_model(std::string_view text) {
  Cursor cursor(logical_lines(text));

  const int t = single_int(cursor.next("interaction strength t"), "t");
  const Line& k_line = cursor.next("parameter count k");
  const int k = single_int(k_line, "k");
  if (k < 1 || k > kMaxParameters) {
    throw ParseError(k_line.number, k_line.tokens[0].column,
                     "parameter count must be in [1, " +
                         std::to_string(kMaxParameters) + "]");
  }
  if (t > k) {
    throw ModelError("t exceeds k (t=" + std::to_string(t) +
                     ", k=" + std::to_string(k) + ")");
  }

  const Line& v_line = cursor.next("value counts");
  if (static_cast<int>(v_line.tokens.size()) != k) {
    throw ParseError(v_line.number, 0,
                     "expected " + std::to_string(k) + " value counts, found " +
                         std::to_string(v_line.tokens.size()));
  }
  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(k));
  for (const auto& token : v_line.tokens) {
    values.push_back(expect_int(v_line, token, "value count"));
  }

  const Line& c_line = cursor.next("constraint count");
  const int c = single_int(c_line, "constraint count");
  if (c < 0) {
    throw ParseError(c_line.number, c_line.tokens[0].column,
                     "constraint count must not be negative");
  }

  std::vector<std::vector<RawLiteral>> raw_constraints;
  std::vector<std::size_t> constraint_lines;
  for (int i = 0; i < c; ++i) {
    const Line& line = cursor.next("constraint line");
    const int m = expect_int(line, line.tokens[0], "assignment count");
    if (m < 0 || static_cast<std::size_t>(m) + 1 != line.tokens.size()) {
      throw ParseError(line.number, line.tokens[0].column,
                       "assignment count " + std::to_string(m) +
                           " does not match the " +
                           std::to_string(line.tokens.size() - 1) +
                           " pairs on the line");
    }
    std::vector<RawLiteral> literals;
    for (std::size_t j = 1; j < line.tokens.size(); ++j) {
      const Token& token = line.tokens[j];
      auto colon = token.text.find(':');
      if (colon == std::string_view::npos || colon == 0 ||
          colon + 1 == token.text.size()) {
        throw ParseError(line.number, token.column,
                         "expected 'p:v', found '" + std::string(token.text) +
                             "'");
      }
      auto param = to_int(token.text.substr(0, colon));
      if (!param) {
        throw ParseError(line.number, token.column,
                         "parameter index must be an integer");
      }
      if (*param < 0 || *param >= k) {
        throw ParseError(line.number, token.column,
                         "parameter " + std::to_string(*param) +
                             " out of range [0, " + std::to_string(k) + ")");
      }
      literals.push_back({*param, token.text.substr(colon + 1), line.number,
                          token.column + colon + 1});
    }
    raw_constraints.push_back(std::move(literals));
    constraint_lines.push_back(line.number);
  }

  std::vector<std::vector<std::string>> names;
  if (!cursor.done()) {
    const Line& header = cursor.next("names section");
    if (trim(header.content) != "names:") {
      throw ParseError(header.number, header.tokens[0].column,
                       "expected 'names:' or end of input, found '" +
                           std::string(header.tokens[0].text) + "'");
    }
    for (int p = 0; p < k; ++p) {
      const Line& line = cursor.next("value labels");
      std::vector<std::string> labels;
      std::string_view rest = line.content;
      while (true) {
        auto comma = rest.find(',');
        auto label = trim(rest.substr(0, comma));
        if (label.empty()) {
          throw ParseError(line.number, 0, "empty value label");
        }
        labels.emplace_back(label);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      if (static_cast<int>(labels.size()) != values[p]) {
        throw ParseError(line.number, 0,
                         "parameter " + std::to_string(p) + " has " +
                             std::to_string(values[p]) + " values but " +
                             std::to_string(labels.size()) + " labels");
      }
      names.push_back(std::move(labels));
    }
    if (!cursor.done()) {
      const Line& extra = cursor.next("");
      throw ParseError(extra.number, extra.tokens[0].column,
                       "trailing content after names section");
    }
  }

  ConstraintSet constraints;
  for (std::size_t i = 0; i < raw_constraints.size(); ++i) {
    std::vector<Assignment> assignments;
    for (const auto& literal : raw_constraints[i]) {
      int value = -1;
      if (auto numeric = to_int(literal.value)) {
        value = *numeric;
      } else if (!names.empty()) {
        const auto& labels = names[literal.param];
        for (std::size_t j = 0; j < labels.size(); ++j) {
          if (labels[j] == literal.value) value = static_cast<int>(j);
        }
        if (value < 0) {
          throw ParseError(literal.line, literal.column,
                           "unknown label '" + std::string(literal.value) +
                               "' for parameter " +
                               std::to_string(literal.param));
        }
      } else {
        throw ParseError(literal.line, literal.column,
                         "value must be an integer (no names section)");
      }
      if (value < 0 || value >= values[literal.param]) {
        throw ParseError(literal.line, literal.column,
                         "value " + std::to_string(value) +
                             " out of range for parameter " +
                             std::to_string(literal.param));
      }
      assignments.push_back({literal.param, value});
    }
    try {
      constraints.add(ForbiddenTuple(std::move(assignments)));
    } catch (const ModelError& e) {
      throw ParseError(constraint_lines[i], 0, e.what());
    }
  }

  return SystemModel(t, std::move(values), std::move(constraints),
                     std::move(names));
}

std::string render_model(const SystemModel& model) {
  std::ostringstream out;
  out << model.strength() << '\n' << model.parameter_count() << '\n';
  for (int p = 0; p < model.parameter_count(); ++p) {
    if (p > 0) out << ' ';
    out << model.value_count(p);
  }
  out << '\n' << model.constraints().size() << '\n';
  for (const auto& tuple : model.constraints()) {
    out << tuple.size();
    for (const auto& a : tuple.assignments()) {
      out << ' ' << a.param << ':' << a.value;
    }
    out << '\n';
  }
  if (model.has_value_names()) {
    out << "names:\n";
    for (const auto& labels : model.value_names()) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        const auto& label = labels[j];
        if (label.empty() || trim(label) != label ||
            label.find_first_of(",#\n") != std::string::npos) {
          throw ModelError("value label '" + label +
                           "' cannot be written to a model file");
        }
        if (j > 0) out << ',';
        out << label;
      }
      out << '\n';
    }
  }
  return out.str();
}

SystemModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

}  // namespace swarmcit
