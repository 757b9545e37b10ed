#include "coarsegrp/literals.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coarsegrp/errors.hpp"

namespace cg::literals {

using fgab::FgAbGroup;
using fgab::Hom;
using intlat::IntMatrix;
using intlat::Integer;
using intlat::IntVector;

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::string what) : s_(text), what_(std::move(what)) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view word) {
    if (!accept(word)) fail("expected '" + std::string(word) + "'");
  }
  void finish() {
    if (!done()) fail("unexpected trailing input");
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string tok(s_.substr(start, pos_ - start));
    if (tok[0] == '+') tok.erase(0, 1);
    return Integer(tok);
  }

  long small_integer() {
    const Integer v = integer();
    if (!v.fits_slong_p()) fail("integer out of range");
    return v.get_si();
  }

  mpq_class rational() {
    const Integer num = integer();
    Integer den = 1;
    if (accept('/')) den = integer();
    if (den == 0) reject("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                                s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  /// Text up to the next top-level occurrence of one of `stops` (or the end).
  std::string_view until(std::string_view stops) {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      if (c == '[' || c == '(' || c == '{') ++depth;
      if (c == ']' || c == ')' || c == '}') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    std::string_view out = s_.substr(start, pos_ - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.remove_suffix(1);
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(what_ + " literal '" + std::string(s_) + "': " + msg + " at offset " +
                     std::to_string(pos_));
  }

  // Well-formed but meaningless values, e.g. Z/0.
  [[noreturn]] void reject(const std::string& msg) const {
    throw DomainError(what_ + " literal '" + std::string(s_) + "': " + msg);
  }

 private:
  std::string_view s_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::vector<IntVector> rows_of(Cursor& c) {
  std::vector<IntVector> rows;
  c.expect('[');
  if (c.accept(']')) return rows;
  do {
    IntVector row;
    c.expect('[');
    if (!c.accept(']')) {
      do row.push_back(c.integer());
      while (c.accept(','));
      c.expect(']');
    }
    rows.push_back(std::move(row));
  } while (c.accept(','));
  c.expect(']');
  return rows;
}

IntMatrix matrix_of(Cursor& c) {
  const std::vector<IntVector> rows = rows_of(c);
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) c.fail("rows have different lengths");
  return IntMatrix::from_rows(rows, cols);
}

FgAbGroup group_of(Cursor& c) {
  IntVector orders;
  do {
    if (c.accept('0')) continue;
    c.expect('Z');
    if (c.accept('^')) {
      const long n = c.small_integer();
      if (n < 0) c.fail("negative exponent");
      for (long i = 0; i < n; ++i) orders.emplace_back(0);
    } else if (c.accept('/')) {
      const Integer d = c.integer();
      if (d < 1) c.reject("cyclic order must be positive");
      orders.push_back(d);
    } else {
      orders.emplace_back(0);
    }
  } while (c.accept('+'));
  return FgAbGroup::from_cyclic_orders(orders);
}

// Stops at a top-level ',' or closing bracket, so groups can sit inside
// braces.
FgAbGroup group_until(Cursor& c, std::string_view stops) {
  const std::string_view text = c.until(stops);
  return parse_group(text);
}

Hom shaped_hom(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& m) {
  if (m.rows() * m.cols() == 0 && (m.rows() != target.dim() || m.cols() != source.dim()))
    return Hom::zero(source, target);
  if (m.rows() != target.dim() || m.cols() != source.dim())
    throw DomainError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      " but a hom " + source.to_string() + " -> " + target.to_string() + " needs " +
                      std::to_string(target.dim()) + "x" + std::to_string(source.dim()));
  return Hom(source, target, m);
}

quasihom::QhMap map_of(Cursor& c);

quasihom::QhMap table_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path);
  nlohmann::json j;
  try {
    in >> j;
    const auto rank = j.at("source_rank").get<std::size_t>();
    const FgAbGroup target = parse_group(j.value("target", std::string("Z")));
    std::vector<quasihom::TableEntry> entries;
    for (const auto& e : j.at("entries")) {
      quasihom::TableEntry t;
      for (const auto& v : e.at("x")) t.x.emplace_back(v.get<long>());
      for (const auto& v : e.at("y")) t.y.emplace_back(v.get<long>());
      if (t.y.size() != target.dim()) throw DomainError("table value has the wrong dimension");
      entries.push_back(std::move(t));
    }
    std::optional<quasihom::QhMap> fallback;
    if (j.contains("fallback")) fallback = parse_map(j.at("fallback").get<std::string>());
    return quasihom::QhMap::table(rank, target, std::move(entries), fallback,
                                  j.value("label", "table@" + path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("table file " + path + ": " + e.what());
  }
}

quasihom::QhMap map_of(Cursor& c) {
  using quasihom::QhMap;
  if (c.accept("largest-even-below")) return QhMap::largest_even_below();
  if (c.accept("abs")) return QhMap::abs_value();
  if (c.accept("floor")) {
    c.expect('(');
    std::vector<mpq_class> slopes;
    mpq_class offset = 0;
    do {
      if (c.accept("offset")) {
        c.expect('=');
        offset = c.rational();
        break;
      }
      slopes.push_back(c.rational());
    } while (c.accept(','));
    c.expect(')');
    if (slopes.empty()) c.fail("floor needs at least one slope");
    return QhMap::affine_floor(std::move(slopes), offset);
  }
  if (c.accept("hom")) {
    const IntMatrix m = matrix_of(c);
    FgAbGroup target = FgAbGroup::free(m.rows());
    if (c.accept("->")) target = group_until(c, ",)");
    return QhMap::hom(shaped_hom(FgAbGroup::free(m.cols()), target, m));
  }
  if (c.accept("compose")) {
    c.expect('(');
    const QhMap outer = map_of(c);
    c.expect(',');
    const QhMap inner = map_of(c);
    c.expect(')');
    return QhMap::compose(outer, inner);
  }
  if (c.accept("table@")) return table_from_file(std::string(c.until(",)")));
  c.fail("unknown map");
}

}  // namespace

FgAbGroup parse_group(std::string_view text) {
  Cursor c(text, "group");
  FgAbGroup g = group_of(c);
  c.finish();
  return g;
}

IntMatrix parse_matrix(std::string_view text) {
  Cursor c(text, "matrix");
  IntMatrix m = matrix_of(c);
  c.finish();
  return m;
}

Hom parse_hom(const FgAbGroup& source, const FgAbGroup& target, std::string_view matrix) {
  return shaped_hom(source, target, parse_matrix(matrix));
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '[' || ch == '(' || ch == '{') ++depth;
    if (ch == ']' || ch == ')' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

coarse::GroupIdeal parse_ideal(std::string_view text, const FgAbGroup& g) {
  using coarse::GroupIdeal;
  Cursor c(text, "ideal");
  std::optional<GroupIdeal> out;
  if (c.accept("finitary")) out = GroupIdeal::finitary(g);
  else if (c.accept("bounded")) out = GroupIdeal::bounded(g);
  else if (c.accept("discrete")) out = GroupIdeal::discrete(g);
  else if (c.accept("finite-rank")) out = GroupIdeal::finite_rank(g);
  else if (c.accept("linear")) {
    c.expect('(');
    const std::vector<IntVector> gens = rows_of(c);
    c.expect(')');
    for (const auto& v : gens)
      if (v.size() != g.dim())
        throw DomainError("generator " + intlat::to_string(v) + " does not live in " + g.to_string());
    std::vector<fgab::Element> elems;
    for (const auto& v : gens) elems.push_back(g.reduce(v));
    out = GroupIdeal::linear(fgab::Subgroup(g, std::move(elems)));
  } else {
    c.fail("unknown ideal");
  }
  c.finish();
  return *out;
}

quasihom::QhMap parse_map(std::string_view text) {
  Cursor c(text, "map");
  quasihom::QhMap m = map_of(c);
  c.finish();
  return m;
}

cgcat::Span parse_span(std::string_view text) {
  Cursor c(text, "span");
  c.expect("span");
  c.expect('{');
  c.expect("apex");
  c.expect(':');
  const FgAbGroup apex = group_until(c, ",}");
  c.expect(',');
  std::optional<Hom> legs[2];
  for (int i = 0; i < 2; ++i) {
    c.expect(i == 0 ? "left" : "right");
    c.expect(':');
    const IntMatrix m = matrix_of(c);
    FgAbGroup target = FgAbGroup::free(m.rows());
    if (c.accept("->")) target = group_until(c, ",}");
    legs[i] = shaped_hom(apex, target, m);
    if (i == 0) c.expect(',');
  }
  c.expect('}');
  c.finish();
  return cgcat::Span(*legs[0], *legs[1]);
}

bigrank::StructuredEndo parse_endo(std::string_view text) {
  using bigrank::Tail;
  Cursor c(text, "endo");
  c.expect("endo");
  c.expect('{');
  c.expect("head");
  c.expect(':');
  const IntMatrix head = matrix_of(c);
  c.expect(',');
  c.expect("tail");
  c.expect(':');
  Tail tail;
  if (c.accept("identity")) {
    tail = Tail::identity();
  } else if (c.accept("zero")) {
    tail = Tail::zero();
  } else if (c.accept("scaled-shift")) {
    c.expect('(');
    const Integer s = c.integer();
    c.expect(',');
    tail = Tail{s, c.small_integer()};
    c.expect(')');
  } else if (c.accept("shift")) {
    c.expect('(');
    tail = Tail::shift_by(c.small_integer());
    c.expect(')');
  } else if (c.accept("scale")) {
    c.expect('(');
    tail = Tail::scale_by(c.integer());
    c.expect(')');
  } else {
    c.fail("unknown tail rule");
  }
  c.expect('}');
  c.finish();
  return bigrank::StructuredEndo(head, tail);
}

geom::PeriodicSet parse_periodic(std::string_view text) {
  Cursor c(text, "periodic");
  c.expect("periodic");
  c.expect('{');
  c.expect('m');
  c.expect(':');
  const long m = c.small_integer();
  c.expect(',');
  c.expect("residues");
  c.expect(':');
  std::vector<long> residues, except;
  auto list = [&](std::vector<long>& out) {
    c.expect('[');
    if (c.accept(']')) return;
    do out.push_back(c.small_integer());
    while (c.accept(','));
    c.expect(']');
  };
  list(residues);
  if (c.accept(',')) {
    c.expect("except");
    c.expect(':');
    list(except);
  }
  c.expect('}');
  c.finish();
  return geom::PeriodicSet(m, std::move(residues), std::move(except));
}

std::vector<long> parse_long_list(std::string_view text) {
  Cursor c(text, "list");
  std::vector<long> out;
  do out.push_back(c.small_integer());
  while (c.accept(','));
  c.finish();
  return out;
}

std::vector<geom::Point> parse_point_set(std::string_view text) {
  Cursor c(text, "point set");
  std::vector<geom::Point> out;
  c.expect('[');
  if (c.peek() == '[') {
    c.expect('[');
    do {
      geom::Point p;
      if (!c.accept(']')) {
        do p.push_back(c.small_integer());
        while (c.accept(','));
        c.expect(']');
      }
      out.push_back(std::move(p));
    } while (c.accept(',') && c.accept('['));
    c.expect(']');
  } else if (!c.accept(']')) {
    do out.push_back({c.small_integer()});
    while (c.accept(','));
    c.expect(']');
  }
  c.finish();
  return out;
}

}  // namespace cg::literals
