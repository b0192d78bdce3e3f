#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace grpd {

/// Base error for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant of a value failed to hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (bad labels, unknown names, schema violations).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration guard was exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

// User-facing labels are opaque keys. The characters below are reserved for
// labels the library derives (pairs, triples, path joins), so user labels
// must not contain them.
inline void check_user_label(const std::string& s) {
  if (s.empty()) throw InputError("empty label");
  for (char c : s) {
    if (c == '(' || c == ')' || c == ',' || c == ';' || c < 0x21 || c > 0x7e)
      throw InputError("label '" + s + "' contains a reserved or non-printable character");
  }
}

inline std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

inline std::string triple_label(const std::string& a, const std::string& b,
                                const std::string& c) {
  return "(" + a + "," + b + "," + c + ")";
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

/// Splits a derived label "(a,b,...)" at its top-level commas.
inline std::vector<std::string> split_components(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ValidationError("malformed composite label '" + s + "'");
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 1;
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start, s.size() - 1 - start));
  return out;
}

/// Merge-find over {0..n-1}.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace grpd
