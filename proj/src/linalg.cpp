#include "zslab/linalg.hpp"

#include <algorithm>

#include "zslab/error.hpp"

namespace zslab {

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

// row -= c * other
void axpy_neg(Coords& row, const Coords& other, std::uint32_t c, std::uint32_t p) {
  if (c == 0) return;
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::uint32_t t = mulmod(c, other[i], p);
    row[i] = row[i] >= t ? row[i] - t : row[i] + p - t;
  }
}

// Solves sum_j c_j * columns[j] = rhs; nullopt when inconsistent or not unique.
std::optional<Coords> solve(std::uint32_t p, const std::vector<Coords>& columns, const Coords& rhs) {
  const std::size_t n = rhs.size(), k = columns.size();
  std::vector<Coords> aug(n, Coords(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = columns[j][i];
    aug[i][k] = rhs[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t sel = r;
    while (sel < n && aug[sel][c] == 0) ++sel;
    if (sel == n) return std::nullopt;
    std::swap(aug[r], aug[sel]);
    std::uint32_t inv = inverse_mod(aug[r][c], p);
    for (auto& v : aug[r]) v = mulmod(v, inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != r) axpy_neg(aug[i], aug[r], aug[i][c], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() != k) return std::nullopt;
  for (std::size_t i = r; i < n; ++i) {
    if (aug[i][k] != 0) return std::nullopt;
  }
  Coords out(k);
  for (std::size_t i = 0; i < k; ++i) out[pivot_col[i]] = aug[i][k];
  return out;
}

}  // namespace

std::vector<std::uint32_t> row_reduce(std::uint32_t p, std::vector<Coords>& rows) {
  std::vector<std::uint32_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    std::uint32_t inv = inverse_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = mulmod(v, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) axpy_neg(rows[i], rows[r], rows[i][c], p);
    }
    pivots.push_back(static_cast<std::uint32_t>(c));
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::uint32_t rank(std::uint32_t p, std::vector<Coords> rows) {
  return static_cast<std::uint32_t>(row_reduce(p, rows).size());
}

Subspace Subspace::zero(const GroupSpec& spec) { return Subspace(spec); }

Subspace Subspace::full(const GroupSpec& spec) {
  std::vector<Coords> units(spec.d(), Coords(spec.d()));
  for (std::uint32_t i = 0; i < spec.d(); ++i) units[i][i] = 1;
  return span(spec, std::move(units));
}

Subspace Subspace::span(const GroupSpec& spec, std::vector<Coords> vectors) {
  Subspace s(spec);
  for (const auto& v : vectors) {
    if (v.size() != spec.d()) throw InputError("vector length does not match dimension");
    for (auto c : v) {
      if (c >= spec.p()) throw InputError("vector entry is not a residue");
    }
  }
  s.pivots_ = row_reduce(spec.p(), vectors);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::span(const GroupSpec& spec, std::span<const Element> vectors) {
  std::vector<Coords> rows;
  rows.reserve(vectors.size());
  for (Element v : vectors) rows.push_back(spec.decode(v));
  return span(spec, std::move(rows));
}

Subspace Subspace::kernel(const GroupSpec& spec, std::span<const Coords> rows) {
  const std::uint32_t p = spec.p(), d = spec.d();
  std::vector<Coords> m(rows.begin(), rows.end());
  auto piv = row_reduce(p, m);
  std::vector<bool> is_pivot(d, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Coords> gens;
  for (std::uint32_t f = 0; f < d; ++f) {
    if (is_pivot[f]) continue;
    Coords x(d, 0);
    x[f] = 1;
    for (std::size_t j = 0; j < piv.size(); ++j) x[piv[j]] = (p - m[j][f]) % p;
    gens.push_back(std::move(x));
  }
  return span(spec, std::move(gens));
}

std::uint64_t Subspace::size() const noexcept {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < dim(); ++i) n *= spec_.p();
  return n;
}

bool Subspace::contains(const Coords& x) const {
  Coords r = x;
  for (std::size_t j = 0; j < basis_.size(); ++j) axpy_neg(r, basis_[j], r[pivots_[j]], spec_.p());
  return std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; });
}

bool Subspace::contains(Element x) const { return contains(spec_.decode(x)); }

bool Subspace::is_subspace_of(const Subspace& other) const {
  return std::all_of(basis_.begin(), basis_.end(), [&](const Coords& b) { return other.contains(b); });
}

Element Subspace::coset_rep(Element x) const {
  Coords r = spec_.decode(x);
  for (std::size_t j = 0; j < basis_.size(); ++j) axpy_neg(r, basis_[j], r[pivots_[j]], spec_.p());
  return spec_.encode(r);
}

Coords Subspace::coordinates(Element x) const {
  Coords c = spec_.decode(x);
  if (!contains(c)) throw DomainError("vector does not lie in the subspace");
  Coords out(dim());
  for (std::size_t j = 0; j < basis_.size(); ++j) out[j] = c[pivots_[j]];
  return out;
}

Element Subspace::combine(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != dim()) throw InputError("coefficient count does not match subspace dimension");
  const std::uint32_t p = spec_.p();
  Coords acc(spec_.d(), 0);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    for (std::uint32_t i = 0; i < spec_.d(); ++i) acc[i] = (acc[i] + mulmod(coeffs[j] % p, basis_[j][i], p)) % p;
  }
  return spec_.encode(acc);
}

std::vector<Element> Subspace::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  Coords coeff(dim(), 0);
  while (true) {
    out.push_back(combine(coeff));
    std::size_t j = 0;
    while (j < coeff.size() && ++coeff[j] == spec_.p()) coeff[j++] = 0;
    if (j == coeff.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace Subspace::complement() const {
  std::vector<bool> is_pivot(spec_.d(), false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<Coords> units;
  for (std::uint32_t i = 0; i < spec_.d(); ++i) {
    if (is_pivot[i]) continue;
    Coords e(spec_.d(), 0);
    e[i] = 1;
    units.push_back(std::move(e));
  }
  return span(spec_, std::move(units));
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (!(other.spec_ == spec_)) throw InputError("subspace spec mismatch");
  std::vector<Coords> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(spec_, std::move(all));
}

std::vector<Coords> canonical_normals(const GroupSpec& spec) {
  const std::uint32_t p = spec.p(), d = spec.d();
  std::vector<Coords> out;
  // Leading 1 at position `lead`, zeros before it, anything after it.
  for (std::uint32_t lead = 0; lead < d; ++lead) {
    std::uint32_t tail = d - lead - 1;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < tail; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Coords n(d, 0);
      n[lead] = 1;
      std::uint64_t v = t;
      // Most significant tail digit last so that the list is lexicographic.
      for (std::uint32_t i = d; i-- > lead + 1;) {
        n[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      out.push_back(std::move(n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(const GroupSpec& spec) {
  if (spec.d() < 2) throw DomainError("F_p has no nonzero proper hyperplanes; need d >= 2");
  std::vector<Hyperplane> out;
  for (auto& n : canonical_normals(spec)) {
    std::vector<Coords> row{n};
    Subspace h = Subspace::kernel(spec, row);
    out.push_back(Hyperplane{std::move(n), std::move(h)});
  }
  return out;
}

std::vector<Element> AffineFlat::elements() const {
  std::vector<Element> out;
  for (Element h : space.elements()) out.push_back(space.spec().add(translate, h));
  std::sort(out.begin(), out.end());
  return out;
}

Projection project(Element a, const Subspace& h, const Subspace& h2) {
  const GroupSpec& spec = h.spec();
  if (!(h2.spec() == spec)) throw InputError("subspace spec mismatch");
  std::vector<Coords> cols = h.basis();
  cols.insert(cols.end(), h2.basis().begin(), h2.basis().end());
  if (h.dim() + h2.dim() != spec.d() || rank(spec.p(), cols) != spec.d()) {
    throw DomainError("subspaces are not complementary");
  }
  auto coeff = solve(spec.p(), cols, spec.decode(a));
  if (!coeff) throw InternalError("complementary subspaces failed to span the space");
  Coords c1(coeff->begin(), coeff->begin() + h.dim());
  Coords c2(coeff->begin() + h.dim(), coeff->end());
  return Projection{h.combine(c1), h2.combine(c2)};
}

bool is_affine_basis(const GroupSpec& spec, std::span<const Element> vectors) {
  if (vectors.size() != spec.d() + 1) {
    throw InputError("an affine basis of F_p^" + std::to_string(spec.d()) + " has " +
                     std::to_string(spec.d() + 1) + " points");
  }
  std::vector<Coords> diffs;
  for (std::size_t i = 1; i < vectors.size(); ++i) diffs.push_back(spec.decode(spec.sub(vectors[i], vectors[0])));
  return rank(spec.p(), std::move(diffs)) == spec.d();
}

LinearMap::LinearMap(GroupSpec spec, std::vector<Coords> rows) : spec_(std::move(spec)), rows_(std::move(rows)) {
  invertible_ = rank(spec_.p(), rows_) == spec_.d();
}

LinearMap LinearMap::identity(const GroupSpec& spec) {
  std::vector<Coords> rows(spec.d(), Coords(spec.d(), 0));
  for (std::uint32_t i = 0; i < spec.d(); ++i) rows[i][i] = 1;
  return LinearMap(spec, std::move(rows));
}

LinearMap LinearMap::from_rows(const GroupSpec& spec, std::vector<Coords> rows) {
  if (rows.size() != spec.d()) throw InputError("linear map needs d rows");
  for (auto& r : rows) {
    if (r.size() != spec.d()) throw InputError("linear map needs d columns");
    for (auto& v : r) v %= spec.p();
  }
  return LinearMap(spec, std::move(rows));
}

Element LinearMap::apply(Element x) const {
  Coords out(spec_.d());
  for (std::uint32_t i = 0; i < spec_.d(); ++i) out[i] = spec_.dot(rows_[i], x);
  return spec_.encode(out);
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  const std::uint32_t d = spec_.d(), p = spec_.p();
  std::vector<Coords> rows(d, Coords(d, 0));
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      std::uint64_t s = 0;
      for (std::uint32_t k = 0; k < d; ++k) s += std::uint64_t{rows_[i][k]} * inner.rows_[k][j] % p;
      rows[i][j] = static_cast<std::uint32_t>(s % p);
    }
  }
  return LinearMap(spec_, std::move(rows));
}

ElementSequence apply_map(const LinearMap& map, const ElementSequence& a, bool require_invertible) {
  if (!(map.spec() == a.spec())) throw InputError("map and sequence live in different groups");
  if (require_invertible && !map.invertible()) throw DomainError("linear map is singular");
  ElementSequence out(a.spec());
  for (const auto& e : a.entries()) out.add(map.apply(e.element), e.multiplicity);
  return out;
}

AffineFlat AffineHyperplane::flat(const GroupSpec& spec) const {
  std::vector<Coords> row{normal};
  Subspace dir = Subspace::kernel(spec, row);
  auto lead = static_cast<std::size_t>(std::find_if(normal.begin(), normal.end(), [](std::uint32_t v) { return v != 0; }) - normal.begin());
  Coords t(spec.d(), 0);
  t[lead] = offset;  // normal[lead] == 1
  return AffineFlat{spec.encode(t), std::move(dir)};
}

HyperplaneCount richest_affine_hyperplane(const ElementSequence& a, std::optional<Element> through) {
  const GroupSpec& spec = a.spec();
  HyperplaneCount best;
  bool have = false;
  std::vector<std::uint64_t> hist(spec.p());
  for (auto& n : canonical_normals(spec)) {
    std::fill(hist.begin(), hist.end(), 0);
    for (const auto& e : a.entries()) hist[spec.dot(n, e.element)] += e.multiplicity;
    std::uint32_t lo = 0, hi = spec.p();
    if (through) {
      lo = spec.dot(n, *through);
      hi = lo + 1;
    }
    for (std::uint32_t c = lo; c < hi; ++c) {
      if (!have || hist[c] > best.count) {
        best = HyperplaneCount{AffineHyperplane{n, c}, hist[c]};
        have = true;
      }
    }
  }
  return best;
}

std::vector<LinearMap> enumerate_general_linear(const GroupSpec& spec) {
  const std::uint32_t d = spec.d(), p = spec.p();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < d * d; ++i) {
    total *= p;
    if (total > 10'000'000) throw InputError("GL(" + std::to_string(d) + ", " + std::to_string(p) + ") is too large to enumerate");
  }
  std::vector<LinearMap> out;
  std::vector<Coords> rows(d, Coords(d, 0));
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t v = t;
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        rows[i][j] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
    }
    if (rank(p, rows) == d) out.push_back(LinearMap::from_rows(spec, rows));
  }
  return out;
}

}  // namespace zslab
