#pragma once

// Line-oriented matrix file format:
//
//   # comment
//   size 3
//   designated 1 3
//   neg 3 3 2
//   or
//   3 1 3
//   1 2 3
//   3 3 3
//   dand ...
//   dimp ...
//
// Each binary table keyword is followed (on the same line and/or the next
// lines) by n*n values; row i is the first argument, column j the second.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "d2lab/matrix.hpp"

namespace d2lab {

class MatrixFormatError : public MatrixError {
 public:
  MatrixFormatError(std::size_t line, const std::string& message)
      : MatrixError("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline std::string write_matrix(const Matrix& m) {
  std::ostringstream out;
  const int n = m.size();
  auto join = [&](auto first, auto last) {
    for (auto it = first; it != last; ++it) out << (it == first ? "" : " ") << *it;
    out << '\n';
  };
  out << "size " << n << '\n';
  out << "designated";
  for (Value v : m.designated()) out << ' ' << v;
  out << '\n';
  out << "neg";
  for (Value v : m.neg_table()) out << ' ' << v;
  out << '\n';
  const std::pair<const char*, const std::vector<Value>*> tables[] = {
      {"or", &m.or_table()}, {"dand", &m.dconj_table()}, {"dimp", &m.dimp_table()}};
  for (const auto& [name, table] : tables) {
    out << name << '\n';
    for (int r = 0; r < n; ++r) join(table->begin() + r * n, table->begin() + (r + 1) * n);
  }
  return out.str();
}

inline Matrix read_matrix(std::string_view text) {
  struct Token {
    std::string word;
    std::size_t line;
  };
  std::vector<Token> tokens;
  {
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::string w;
      while (words >> w) tokens.push_back({w, line_no});
    }
  }

  std::size_t pos = 0;
  auto is_keyword = [](const std::string& w) { return !w.empty() && std::isalpha(static_cast<unsigned char>(w[0])); };
  auto read_int = [&](const Token& t) {
    for (char c : t.word)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw MatrixFormatError(t.line, "malformed value '" + t.word + "'");
    if (t.word.size() > 6) throw MatrixFormatError(t.line, "value out of range: " + t.word);
    return std::stoi(t.word);
  };
  auto read_values = [&](std::size_t count, const std::string& what, std::size_t line) {
    std::vector<Value> vals;
    while (pos < tokens.size() && !is_keyword(tokens[pos].word)) vals.push_back(read_int(tokens[pos++]));
    if (vals.size() != count)
      throw MatrixFormatError(line, what + " expects " + std::to_string(count) + " values, got " +
                                        std::to_string(vals.size()));
    return vals;
  };

  int size = 0;
  std::optional<std::vector<Value>> designated, neg, lor, dconj, dimp;
  while (pos < tokens.size()) {
    const Token key = tokens[pos++];
    if (key.word == "size") {
      if (size) throw MatrixFormatError(key.line, "duplicate size line");
      auto v = read_values(1, "size", key.line);
      size = v[0];
      if (size < 1 || size > Matrix::kMaxSize) throw MatrixFormatError(key.line, "size out of range");
      continue;
    }
    if (!size) throw MatrixFormatError(key.line, "'size' must come first");
    const auto n = static_cast<std::size_t>(size);
    auto take = [&](std::optional<std::vector<Value>>& slot, std::size_t count) {
      if (slot) throw MatrixFormatError(key.line, "duplicate '" + key.word + "' section");
      slot = read_values(count, key.word, key.line);
      for (Value v : *slot)
        if (v < 1 || v > size)
          throw MatrixFormatError(key.line, key.word + " value " + std::to_string(v) + " out of range 1.." +
                                                std::to_string(size));
    };
    if (key.word == "designated") {
      if (designated) throw MatrixFormatError(key.line, "duplicate 'designated' line");
      std::vector<Value> vals;
      while (pos < tokens.size() && !is_keyword(tokens[pos].word)) vals.push_back(read_int(tokens[pos++]));
      if (vals.empty()) throw MatrixFormatError(key.line, "designated set must be nonempty");
      for (Value v : vals)
        if (v < 1 || v > size) throw MatrixFormatError(key.line, "designated value out of range");
      designated = vals;
    } else if (key.word == "neg") {
      take(neg, n);
    } else if (key.word == "or") {
      take(lor, n * n);
    } else if (key.word == "dand") {
      take(dconj, n * n);
    } else if (key.word == "dimp") {
      take(dimp, n * n);
    } else {
      throw MatrixFormatError(key.line, "unknown keyword '" + key.word + "'");
    }
  }
  if (!size) throw MatrixFormatError(0, "missing 'size' line");
  if (!designated) throw MatrixFormatError(0, "missing 'designated' line");
  if (!neg) throw MatrixFormatError(0, "missing 'neg' table");
  if (!lor) throw MatrixFormatError(0, "missing 'or' table");
  if (!dconj) throw MatrixFormatError(0, "missing 'dand' table");
  if (!dimp) throw MatrixFormatError(0, "missing 'dimp' table");
  return Matrix(size, *designated, *neg, *lor, *dconj, *dimp);
}

inline Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_matrix(ss.str());
}

}  // namespace d2lab
