#include "ccw/group.hpp"

#include "ccw/error.hpp"
#include "ccw/rational.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

namespace ccw {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : w) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    fail(ErrorKind::Schema, "malformed integer '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Rank over Q of a list of integer vectors.
int rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [c](const auto& row) { return row[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    auto& prow = rows[rank];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      Rational factor = rows[r][c] / prow[c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * prow[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

// ---------------------------------------------------------------- Z^n

FreeAbelianGroup::FreeAbelianGroup(int rank) : rank_(rank) {
  if (rank < 1) fail(ErrorKind::InvalidArgument, "free abelian rank must be >= 1");
}

std::string FreeAbelianGroup::name() const { return "Z^" + std::to_string(rank_); }

Word FreeAbelianGroup::identity() const { return Word(rank_, 0); }

Word FreeAbelianGroup::multiply(const Word& a, const Word& b) const {
  Word out(rank_);
  for (int i = 0; i < rank_; ++i) out[i] = a[i] + b[i];
  return out;
}

Word FreeAbelianGroup::inverse(const Word& a) const {
  Word out(rank_);
  for (int i = 0; i < rank_; ++i) out[i] = -a[i];
  return out;
}

int FreeAbelianGroup::word_length(const Word& a) const {
  int len = 0;
  for (auto v : a) len += v < 0 ? -v : v;
  return len;
}

std::vector<Word> FreeAbelianGroup::generators() const {
  std::vector<Word> gens;
  for (int i = 0; i < rank_; ++i) {
    Word e(rank_, 0);
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }
  return gens;
}

std::string FreeAbelianGroup::format(const Word& a) const {
  std::string out;
  for (int i = 0; i < rank_; ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out;
}

Word FreeAbelianGroup::parse(std::string_view text) const {
  auto parts = split_on(text, ',');
  if (static_cast<int>(parts.size()) != rank_) {
    fail(ErrorKind::Schema, "expected " + std::to_string(rank_) + " coordinates in '" + std::string(text) + "'");
  }
  Word w;
  for (auto p : parts) w.push_back(parse_int(p));
  return w;
}

int FreeAbelianGroup::lattice_rank(std::span<const Word> gens) const {
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens) {
    std::vector<Rational> row;
    for (auto v : g) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  return rational_rank(std::move(rows));
}

SubgroupVerdict FreeAbelianGroup::is_finite_subgroup(std::span<const Word> gens) const {
  return {std::all_of(gens.begin(), gens.end(), [this](const Word& g) { return g == identity(); }), true};
}

SubgroupVerdict FreeAbelianGroup::is_virtually_cyclic_subgroup(std::span<const Word> gens) const {
  return {lattice_rank(gens) <= 1, true};
}

// ---------------------------------------------------------------- F_k

FreeGroup::FreeGroup(int rank) : rank_(rank) {
  if (rank < 1 || rank > 26) fail(ErrorKind::InvalidArgument, "free group rank must be in 1..26");
}

std::string FreeGroup::name() const { return "F_" + std::to_string(rank_); }

Word FreeGroup::multiply(const Word& a, const Word& b) const {
  Word out = a;
  for (auto letter : b) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

Word FreeGroup::inverse(const Word& a) const {
  Word out(a.rbegin(), a.rend());
  for (auto& l : out) l = -l;
  return out;
}

std::vector<Word> FreeGroup::generators() const {
  std::vector<Word> gens;
  for (int i = 1; i <= rank_; ++i) {
    gens.push_back({i});
    gens.push_back({-i});
  }
  return gens;
}

std::string FreeGroup::format(const Word& a) const {
  if (a.empty()) return "1";
  std::string out;
  for (auto l : a) {
    out += l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1);
  }
  return out;
}

Word FreeGroup::parse(std::string_view text) const {
  if (text == "1") return {};
  Word w;
  for (char c : text) {
    std::int32_t letter = 0;
    if (c >= 'a' && c < 'a' + rank_) {
      letter = c - 'a' + 1;
    } else if (c >= 'A' && c < 'A' + rank_) {
      letter = -(c - 'A' + 1);
    } else {
      fail(ErrorKind::Schema, "bad letter in free-group word '" + std::string(text) + "'");
    }
    w = multiply(w, Word{letter});
  }
  if (format(w) != text) fail(ErrorKind::Schema, "free-group word '" + std::string(text) + "' is not reduced");
  return w;
}

SubgroupVerdict FreeGroup::is_finite_subgroup(std::span<const Word> gens) const {
  return {std::all_of(gens.begin(), gens.end(), [](const Word& g) { return g.empty(); }), true};
}

SubgroupVerdict FreeGroup::is_virtually_cyclic_subgroup(std::span<const Word> gens) const {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!commute(gens[i], gens[j])) return {false, true};
    }
  }
  return {true, true};
}

// ---------------------------------------------------------------- finite

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators)
    : table_(std::move(table)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty multiplication table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::InvalidArgument, "multiplication table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) fail(ErrorKind::InvalidArgument, "multiplication table entry out of range");
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) fail(ErrorKind::InvalidArgument, "multiplication table has no identity");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          fail(ErrorKind::InvalidArgument, "multiplication table is not associative");
        }
      }
    }
  }
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == identity_) inverse_[a] = b;
    }
    if (inverse_[a] < 0) fail(ErrorKind::InvalidArgument, "element without inverse in table");
  }
  std::vector<int> symmetric;
  for (int g : generators) {
    if (g < 0 || g >= n) fail(ErrorKind::InvalidArgument, "generator out of range");
    for (int s : {g, inverse_[g]}) {
      if (s != identity_ && std::find(symmetric.begin(), symmetric.end(), s) == symmetric.end()) {
        symmetric.push_back(s);
      }
    }
  }
  std::sort(symmetric.begin(), symmetric.end());
  gens_ = std::move(symmetric);

  length_.assign(n, -1);
  length_[identity_] = 0;
  std::deque<int> queue{identity_};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (int s : gens_) {
      int b = table_[a][s];
      if (length_[b] < 0) {
        length_[b] = length_[a] + 1;
        queue.push_back(b);
      }
    }
  }
  if (std::find(length_.begin(), length_.end(), -1) != length_.end()) {
    fail(ErrorKind::InvalidArgument, "generators do not generate the finite group");
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "cyclic group order must be >= 1");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>(std::move(table), std::vector<int>{n > 1 ? 1 : 0});
}

std::string FiniteGroup::name() const { return "finite(" + std::to_string(order()) + ")"; }

Word FiniteGroup::multiply(const Word& a, const Word& b) const { return {table_[a[0]][b[0]]}; }

Word FiniteGroup::inverse(const Word& a) const { return {inverse_[a[0]]}; }

int FiniteGroup::word_length(const Word& a) const { return length_[a[0]]; }

std::vector<Word> FiniteGroup::generators() const {
  std::vector<Word> out;
  for (int g : gens_) out.push_back({g});
  return out;
}

std::string FiniteGroup::format(const Word& a) const { return std::to_string(a[0]); }

Word FiniteGroup::parse(std::string_view text) const {
  int v = parse_int(text);
  if (v < 0 || v >= order()) fail(ErrorKind::Schema, "finite-group element out of range: " + std::string(text));
  return {v};
}

// ---------------------------------------------------------------- product

ProductGroup::ProductGroup(std::vector<std::shared_ptr<const Group>> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2) fail(ErrorKind::InvalidArgument, "product needs at least two factors");
}

std::string ProductGroup::name() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " x ";
    out += factors_[i]->name();
  }
  return out;
}

std::vector<Word> ProductGroup::split(const Word& a) const {
  std::vector<Word> parts;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto len = static_cast<std::size_t>(a.at(pos));
    parts.emplace_back(a.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                       a.begin() + static_cast<std::ptrdiff_t>(pos + 1 + len));
    pos += 1 + len;
  }
  return parts;
}

Word ProductGroup::join(const std::vector<Word>& parts) const {
  Word out;
  for (const auto& p : parts) {
    out.push_back(static_cast<std::int32_t>(p.size()));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Word ProductGroup::identity() const {
  std::vector<Word> parts;
  for (const auto& f : factors_) parts.push_back(f->identity());
  return join(parts);
}

Word ProductGroup::multiply(const Word& a, const Word& b) const {
  auto pa = split(a);
  auto pb = split(b);
  for (std::size_t i = 0; i < factors_.size(); ++i) pa[i] = factors_[i]->multiply(pa[i], pb[i]);
  return join(pa);
}

Word ProductGroup::inverse(const Word& a) const {
  auto pa = split(a);
  for (std::size_t i = 0; i < factors_.size(); ++i) pa[i] = factors_[i]->inverse(pa[i]);
  return join(pa);
}

int ProductGroup::word_length(const Word& a) const {
  auto pa = split(a);
  int len = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) len += factors_[i]->word_length(pa[i]);
  return len;
}

std::vector<Word> ProductGroup::generators() const {
  std::vector<Word> gens;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const auto& s : factors_[i]->generators()) {
      std::vector<Word> parts;
      for (const auto& f : factors_) parts.push_back(f->identity());
      parts[i] = s;
      gens.push_back(join(parts));
    }
  }
  return gens;
}

std::string ProductGroup::format(const Word& a) const {
  auto pa = split(a);
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += '|';
    out += factors_[i]->format(pa[i]);
  }
  return out;
}

Word ProductGroup::parse(std::string_view text) const {
  auto parts = split_on(text, '|');
  if (parts.size() != factors_.size()) fail(ErrorKind::Schema, "wrong factor count in '" + std::string(text) + "'");
  std::vector<Word> words;
  for (std::size_t i = 0; i < parts.size(); ++i) words.push_back(factors_[i]->parse(parts[i]));
  return join(words);
}

SubgroupVerdict ProductGroup::is_finite_subgroup(std::span<const Word> gens) const {
  bool exact = true;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::vector<Word> proj;
    for (const auto& g : gens) proj.push_back(split(g)[i]);
    auto v = factors_[i]->is_finite_subgroup(proj);
    exact = exact && v.exact;
    if (!v.holds) return {false, exact};
  }
  return {true, exact};
}

SubgroupVerdict ProductGroup::is_virtually_cyclic_subgroup(std::span<const Word> gens) const {
  // Finite factors only contribute a finite kernel; the question reduces to
  // the projection onto the infinite factors.
  std::vector<std::vector<Rational>> abelian_rows(gens.size());
  int nontrivial_free = 0;
  bool free_projections_vc = true;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::vector<Word> proj;
    for (const auto& g : gens) proj.push_back(split(g)[i]);
    switch (factors_[i]->kind()) {
      case GroupKind::FreeAbelian:
        for (std::size_t r = 0; r < proj.size(); ++r) {
          for (auto v : proj[r]) abelian_rows[r].emplace_back(v);
        }
        break;
      case GroupKind::Free:
      case GroupKind::Product:
        if (!factors_[i]->is_finite_subgroup(proj).holds) {
          ++nontrivial_free;
          free_projections_vc = free_projections_vc && factors_[i]->is_virtually_cyclic_subgroup(proj).holds;
        }
        break;
      case GroupKind::Finite:
        break;
    }
  }
  int abelian_rank = abelian_rows.empty() || abelian_rows.front().empty() ? 0 : rational_rank(abelian_rows);
  if (!free_projections_vc || abelian_rank >= 2) return {false, true};
  if (nontrivial_free == 0) return {abelian_rank <= 1, true};
  if (nontrivial_free == 1 && abelian_rank == 0) return {true, true};
  // Mixed projections (e.g. a diagonal in Z x F_k): undecided, answer conservatively.
  return {false, false};
}

std::shared_ptr<const Group> make_free_abelian(int rank) { return std::make_shared<FreeAbelianGroup>(rank); }
std::shared_ptr<const Group> make_free(int rank) { return std::make_shared<FreeGroup>(rank); }

}  // namespace ccw
