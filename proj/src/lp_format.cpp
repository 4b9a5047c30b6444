#include "cecsp/lp_format.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "cecsp/error.hpp"

namespace cecsp {

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_terms(std::ostream& out, const std::vector<LpTerm>& terms,
                 const LinearProgram& lp) {
  int on_line = 0;
  bool first = true;
  for (const LpTerm& t : terms) {
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    const double c = t.coefficient;
    if (first) {
      out << (c < 0 ? "- " : "");
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    out << format_number(std::abs(c)) << ' ' << lp.columns[t.column].name;
    first = false;
    ++on_line;
  }
}

const char* relation(RowSense s) {
  switch (s) {
    case RowSense::kLessEqual: return "<=";
    case RowSense::kGreaterEqual: return ">=";
    case RowSense::kEqual: return "=";
  }
  return "=";
}

}  // namespace

void write_lp_format(std::ostream& out, const LinearProgram& lp,
                     const std::string& title) {
  if (!title.empty()) out << "\\ " << title << '\n';
  out << "\\ " << lp.num_columns() << " columns, " << lp.num_rows()
      << " rows\nMinimize\n obj: ";
  std::vector<LpTerm> objective;
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (lp.columns[j].cost != 0) objective.push_back({j, lp.columns[j].cost});
  }
  if (objective.empty() && lp.num_columns() > 0) objective.push_back({0, 0.0});
  write_terms(out, objective, lp);
  if (lp.objective_offset != 0) {
    out << (lp.objective_offset < 0 ? " - " : " + ")
        << format_number(std::abs(lp.objective_offset));
  }
  out << "\nSubject To\n";
  for (const LpRow& row : lp.rows) {
    out << ' ' << row.name << ": ";
    if (row.terms.empty()) {
      out << "0 " << lp.columns.at(0).name;
    } else {
      write_terms(out, row.terms, lp);
    }
    out << ' ' << relation(row.sense) << ' ' << format_number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const LpColumn& col : lp.columns) {
    out << ' ';
    if (col.lower == col.upper) {
      out << col.name << " = " << format_number(col.lower);
    } else if (std::isinf(col.lower) && std::isinf(col.upper)) {
      out << col.name << " free";
    } else if (std::isinf(col.upper)) {
      out << col.name << " >= " << format_number(col.lower);
    } else {
      out << format_number(col.lower) << " <= " << col.name
          << " <= " << format_number(col.upper);
    }
    out << '\n';
  }
  std::vector<const LpColumn*> binaries, generals;
  for (const LpColumn& col : lp.columns) {
    if (!col.is_integer) continue;
    const bool binary = col.lower >= 0 && col.upper <= 1;
    (binary ? binaries : generals).push_back(&col);
  }
  auto list = [&](const char* header, const std::vector<const LpColumn*>& cols) {
    if (cols.empty()) return;
    out << header << '\n';
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out << " " << cols[k]->name;
      if (k % 8 == 7 || k + 1 == cols.size()) out << '\n';
    }
  };
  list("Binaries", binaries);
  list("Generals", generals);
  out << "End\n";
}

std::string to_lp_format(const LinearProgram& lp, const std::string& title) {
  std::ostringstream os;
  write_lp_format(os, lp, title);
  return os.str();
}

namespace {

struct Token {
  enum Kind { kName, kNumber, kOp, kColon } kind;
  std::string text;
  double number = 0;
  int line = 0;
};

bool is_op_char(char c) { return c == '<' || c == '>' || c == '=' || c == '+' || c == '-'; }

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto cut = line.find('\\'); cut != std::string::npos) line.resize(cut);
    std::size_t k = 0;
    while (k < line.size()) {
      const char c = line[k];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
      } else if (c == ':') {
        tokens.push_back({Token::kColon, ":", 0, line_no});
        ++k;
      } else if (c == '<' || c == '>' || c == '=') {
        std::string op(1, c);
        if (k + 1 < line.size() && (line[k + 1] == '=' || line[k + 1] == '<' || line[k + 1] == '>')) {
          op += line[++k];
        }
        ++k;
        if (op == "=<" || op == "<") op = "<=";
        if (op == "=>" || op == ">") op = ">=";
        tokens.push_back({Token::kOp, op, 0, line_no});
      } else if (c == '+' || c == '-') {
        tokens.push_back({Token::kOp, std::string(1, c), 0, line_no});
        ++k;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t end = k;
        while (end < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[end])) || line[end] == '.')) {
          ++end;
        }
        if (end < line.size() && (line[end] == 'e' || line[end] == 'E')) {
          std::size_t exp = end + 1;
          if (exp < line.size() && (line[exp] == '+' || line[exp] == '-')) ++exp;
          if (exp < line.size() && std::isdigit(static_cast<unsigned char>(line[exp]))) {
            end = exp;
            while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
          }
        }
        Token t{Token::kNumber, line.substr(k, end - k), 0, line_no};
        auto res = std::from_chars(line.data() + k, line.data() + end, t.number);
        if (res.ec != std::errc()) {
          throw FormatError("line " + std::to_string(line_no) + ": bad number");
        }
        tokens.push_back(t);
        k = end;
      } else {
        std::size_t end = k;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
               !is_op_char(line[end]) && line[end] != ':') {
          ++end;
        }
        std::string word = line.substr(k, end - k);
        std::string lower = word;
        for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (lower == "inf" || lower == "infinity") {
          tokens.push_back({Token::kNumber, word, kInfinity, line_no});
        } else {
          tokens.push_back({Token::kName, word, 0, line_no});
        }
        k = end;
      }
    }
  }
  return tokens;
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

class LpParser {
 public:
  explicit LpParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  LinearProgram parse() {
    while (pos_ < tokens_.size()) {
      if (auto s = section_at(pos_)) {
        section_ = *s;
        if (section_ == Section::kEnd) break;
        continue;
      }
      switch (section_) {
        case Section::kObjective: parse_objective(); break;
        case Section::kConstraints: parse_constraint(); break;
        case Section::kBounds: parse_bound(); break;
        case Section::kBinaries:
        case Section::kGenerals: parse_integer(); break;
        default: fail("content outside any section");
      }
    }
    for (std::size_t j = 0; j < lp_.columns.size(); ++j) {
      LpColumn& col = lp_.columns[j];
      if (binary_[j] && !upper_set_[j]) col.upper = 1.0;
    }
    return std::move(lp_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    const int line = pos_ < tokens_.size() ? tokens_[pos_].line
                                           : (tokens_.empty() ? 0 : tokens_.back().line);
    throw FormatError("LP file line " + std::to_string(line) + ": " + what);
  }

  static std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  }

  // Detects a section keyword at token index k; advances past it.
  std::optional<Section> section_at(std::size_t k) {
    const Token& t = tokens_[k];
    if (t.kind != Token::kName) return std::nullopt;
    // A name followed by ':' is a row label, never a keyword.
    if (k + 1 < tokens_.size() && tokens_[k + 1].kind == Token::kColon) return std::nullopt;
    const std::string w = lower(t.text);
    auto take = [&](std::size_t count, Section s) {
      pos_ = k + count;
      return std::optional<Section>(s);
    };
    if (w == "minimize" || w == "minimise" || w == "min") return take(1, Section::kObjective);
    if (w == "maximize" || w == "maximise" || w == "max") fail("maximization is not supported");
    if ((w == "subject" || w == "such") && k + 1 < tokens_.size() &&
        lower(tokens_[k + 1].text) == (w == "subject" ? "to" : "that")) {
      return take(2, Section::kConstraints);
    }
    if (w == "st" || w == "s.t.") return take(1, Section::kConstraints);
    if (w == "bounds" || w == "bound") return take(1, Section::kBounds);
    if (w == "binaries" || w == "binary" || w == "bin") return take(1, Section::kBinaries);
    if (w == "generals" || w == "general" || w == "gen") return take(1, Section::kGenerals);
    if (w == "end") return take(1, Section::kEnd);
    return std::nullopt;
  }

  int column(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<int>(lp_.columns.size()));
    if (inserted) {
      lp_.columns.push_back({name, 0.0, kInfinity, 0.0, false});
      binary_.push_back(0);
      upper_set_.push_back(0);
    }
    return it->second;
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool peek_is(Token::Kind kind, const char* text = nullptr) const {
    return !at_end() && peek().kind == kind && (!text || peek().text == text);
  }

  // Parses "[+|-] [number] name" or a bare signed constant. Returns false
  // when the next token cannot start a term.
  bool parse_term(std::vector<LpTerm>& terms, double& constant) {
    if (at_end() || section_peek()) return false;
    double sign = 1.0;
    bool saw_sign = false;
    while (peek_is(Token::kOp, "+") || peek_is(Token::kOp, "-")) {
      if (peek().text == "-") sign = -sign;
      saw_sign = true;
      ++pos_;
    }
    if (at_end()) fail("dangling sign");
    double coef = 1.0;
    bool saw_number = false;
    if (peek().kind == Token::kNumber) {
      coef = peek().number;
      saw_number = true;
      ++pos_;
    }
    if (!at_end() && peek().kind == Token::kName && !section_peek() &&
        !(pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == Token::kColon)) {
      terms.push_back({column(peek().text), sign * coef});
      ++pos_;
      return true;
    }
    if (saw_number) {
      constant += sign * coef;
      return true;
    }
    if (saw_sign) fail("expected a term after sign");
    return false;
  }

  bool section_peek() {
    if (at_end()) return false;
    const std::size_t saved = pos_;
    const bool is_section = section_at(pos_).has_value();
    pos_ = saved;
    return is_section;
  }

  void skip_label() {
    if (pos_ + 1 < tokens_.size() && peek().kind == Token::kName &&
        tokens_[pos_ + 1].kind == Token::kColon) {
      pos_ += 2;
    }
  }

  void parse_objective() {
    skip_label();
    std::vector<LpTerm> terms;
    double constant = 0;
    while (parse_term(terms, constant)) {
    }
    for (const LpTerm& t : terms) lp_.columns[t.column].cost += t.coefficient;
    lp_.objective_offset += constant;
  }

  double signed_number() {
    double sign = 1.0;
    while (peek_is(Token::kOp, "+") || peek_is(Token::kOp, "-")) {
      if (peek().text == "-") sign = -sign;
      ++pos_;
    }
    if (at_end() || peek().kind != Token::kNumber) fail("expected a number");
    return sign * tokens_[pos_++].number;
  }

  void parse_constraint() {
    LpRow row;
    if (pos_ + 1 < tokens_.size() && peek().kind == Token::kName &&
        tokens_[pos_ + 1].kind == Token::kColon) {
      row.name = peek().text;
      pos_ += 2;
    } else {
      row.name = "R" + std::to_string(lp_.rows.size() + 1);
    }
    double constant = 0;
    while (!at_end() && !(peek().kind == Token::kOp && peek().text.size() >= 1 &&
                          (peek().text[0] == '<' || peek().text[0] == '>' || peek().text[0] == '='))) {
      if (!parse_term(row.terms, constant)) fail("malformed constraint " + row.name);
    }
    if (at_end()) fail("constraint without relation");
    const std::string op = tokens_[pos_++].text;
    row.sense = op == "<=" ? RowSense::kLessEqual
              : op == ">=" ? RowSense::kGreaterEqual : RowSense::kEqual;
    row.rhs = signed_number() - constant;
    lp_.rows.push_back(std::move(row));
  }

  void parse_bound() {
    auto rel = [&]() {
      if (at_end() || peek().kind != Token::kOp) fail("expected relation in bound");
      return tokens_[pos_++].text;
    };
    auto apply = [&](int col, const std::string& op, double v, bool value_on_left) {
      std::string o = op;
      if (value_on_left) o = o == "<=" ? ">=" : o == ">=" ? "<=" : o;
      LpColumn& c = lp_.columns[col];
      if (o == "<=") {
        c.upper = v;
        upper_set_[col] = 1;
      } else if (o == ">=") {
        c.lower = v;
      } else {
        c.lower = c.upper = v;
        upper_set_[col] = 1;
      }
    };
    if (peek().kind == Token::kName) {
      const int col = column(tokens_[pos_++].text);
      if (peek_is(Token::kName) && lower(peek().text) == "free") {
        ++pos_;
        lp_.columns[col].lower = -kInfinity;
        lp_.columns[col].upper = kInfinity;
        upper_set_[col] = 1;
        return;
      }
      const std::string op = rel();
      apply(col, op, signed_number(), false);
      return;
    }
    const double left = signed_number();
    const std::string op1 = rel();
    if (at_end() || peek().kind != Token::kName) fail("expected column in bound");
    const int col = column(tokens_[pos_++].text);
    apply(col, op1, left, true);
    if (!at_end() && peek().kind == Token::kOp &&
        (peek().text == "<=" || peek().text == ">=" || peek().text == "=")) {
      const std::string op2 = rel();
      apply(col, op2, signed_number(), false);
    }
  }

  void parse_integer() {
    if (peek().kind != Token::kName) fail("expected column name");
    const int col = column(tokens_[pos_++].text);
    lp_.columns[col].is_integer = true;
    if (section_ == Section::kBinaries) binary_[col] = 1;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Section section_ = Section::kNone;
  LinearProgram lp_;
  std::unordered_map<std::string, int> index_;
  std::vector<char> binary_;
  std::vector<char> upper_set_;
};

}  // namespace

LinearProgram parse_lp_format(std::istream& in) {
  return LpParser(tokenize(in)).parse();
}

LinearProgram read_lp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  return parse_lp_format(in);
}

}  // namespace cecsp
