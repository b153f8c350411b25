#include "wtower/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wtower {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(std::size_t index, Integer coeff) {
  SparseVec v;
  if (!coeff.is_zero()) v.terms_.push_back({index, std::move(coeff)});
  return v;
}

SparseVec SparseVec::from_pairs(
    std::vector<std::pair<std::size_t, Integer>> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec v;
  for (auto& [idx, c] : pairs) {
    if (!v.terms_.empty() && v.terms_.back().index == idx) {
      v.terms_.back().coeff += c;
      if (v.terms_.back().coeff.is_zero()) v.terms_.pop_back();
    } else if (!c.is_zero()) {
      v.terms_.push_back({idx, std::move(c)});
    }
  }
  return v;
}

SparseVec SparseVec::from_dense(const std::vector<Integer>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.terms_.push_back({i, dense[i]});
  return v;
}

Integer SparseVec::get(std::size_t index) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), index,
      [](const Term& t, std::size_t i) { return t.index < i; });
  if (it != terms_.end() && it->index == index) return it->coeff;
  return 0;
}

std::vector<Integer> SparseVec::to_dense(std::size_t length) const {
  std::vector<Integer> out(length);
  for (const auto& t : terms_) {
    if (t.index >= length) throw std::out_of_range("SparseVec::to_dense");
    out[t.index] = t.coeff;
  }
  return out;
}

SparseVec& SparseVec::add_scaled(const SparseVec& other, const Integer& c) {
  if (c.is_zero() || other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->index < b->index)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == terms_.end() || b->index < a->index) {
      out.push_back({b->index, c * b->coeff});
      ++b;
    } else {
      Integer v = std::move(a->coeff);
      v.addmul(c, b->coeff);
      if (!v.is_zero()) out.push_back({a->index, std::move(v)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

SparseVec& SparseVec::scale(const Integer& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& cols,
                                  std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, c);
  return out;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Integer& v) { return v.is_zero(); });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j).addmul(x, b.at(k, j));
    }
  return c;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector shape mismatch");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero()) out[i].addmul(at(i, j), v[j]);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!at(src, j).is_zero()) at(dst, j).addmul(c, at(src, j));
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& c) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!at(i, src).is_zero()) at(i, dst).addmul(c, at(i, src));
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, c) = -at(i, c);
}

// ---------------------------------------------------------------- Smith form

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(S.at(i, i));
  return d;
}

namespace {

struct SmithWork {
  IntMatrix A, U, Uinv, V;

  void row_add(std::size_t dst, std::size_t src, const Integer& c) {
    A.add_row(dst, src, c);
    U.add_row(dst, src, c);
    Uinv.add_col(src, dst, -c);
  }
  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void row_negate(std::size_t r) {
    A.negate_row(r);
    U.negate_row(r);
    Uinv.negate_col(r);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& c) {
    A.add_col(dst, src, c);
    V.add_col(dst, src, c);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t r = M.rows(), c = M.cols();
  SmithWork w{M, IntMatrix::identity(r), IntMatrix::identity(r),
              IntMatrix::identity(c)};
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Pivot on the entry of least absolute value.
    std::size_t pi = r, pj = c;
    Integer best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        const Integer& v = w.A.at(i, j);
        if (v.is_zero()) continue;
        Integer a = v.abs();
        if (pi == r || a < best) {
          best = std::move(a);
          pi = i;
          pj = j;
          if (best.is_one()) break;
        }
      }
    if (pi == r) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < r; ++i)
        if (!w.A.at(i, t).is_zero())
          w.row_add(i, t, -round_div(w.A.at(i, t), w.A.at(t, t)));
      for (std::size_t j = t + 1; j < c; ++j)
        if (!w.A.at(t, j).is_zero())
          w.col_add(j, t, -round_div(w.A.at(t, j), w.A.at(t, t)));

      // Any leftover entry in the pivot row/column is smaller than the pivot.
      std::size_t si = r, sj = c;
      Integer small;
      for (std::size_t i = t + 1; i < r; ++i) {
        const Integer& v = w.A.at(i, t);
        if (!v.is_zero() && (si == r || v.abs() < small)) {
          small = v.abs();
          si = i;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        const Integer& v = w.A.at(t, j);
        if (!v.is_zero() && ((si == r && sj == c) || v.abs() < small)) {
          small = v.abs();
          sj = j;
          si = r;
        }
      }
      if (si != r) {
        w.row_swap(t, si);
        continue;
      }
      if (sj != c) {
        w.col_swap(t, sj);
        continue;
      }

      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!divides(w.A.at(t, t), w.A.at(i, j))) {
            w.row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (w.A.at(t, t).sign() < 0) w.row_negate(t);
  }
  SmithForm out;
  out.rank = t;
  out.S = std::move(w.A);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.Uinv = std::move(w.Uinv);
  return out;
}

// ---------------------------------------------------------------- Hermite form

std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix& M) {
  Lattice lat(M);
  return {lat.hermite(), lat.transform()};
}

Lattice::Lattice(const IntMatrix& generators)
    : dim_(generators.rows()),
      ngens_(generators.cols()),
      H_(generators),
      V_(IntMatrix::identity(generators.cols())) {
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    H_.add_col(dst, src, c);
    V_.add_col(dst, src, c);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    H_.swap_cols(a, b);
    V_.swap_cols(a, b);
  };
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim_ && k < ngens_; ++i) {
    for (;;) {
      std::size_t best = ngens_;
      for (std::size_t j = k; j < ngens_; ++j) {
        const Integer& v = H_.at(i, j);
        if (!v.is_zero() && (best == ngens_ || v.abs() < H_.at(i, best).abs()))
          best = j;
      }
      if (best == ngens_) break;
      col_swap(k, best);
      bool others = false;
      for (std::size_t j = k + 1; j < ngens_; ++j) {
        if (H_.at(i, j).is_zero()) continue;
        col_add(j, k, -round_div(H_.at(i, j), H_.at(i, k)));
        if (!H_.at(i, j).is_zero()) others = true;
      }
      if (!others) break;
    }
    if (H_.at(i, k).is_zero()) continue;
    if (H_.at(i, k).sign() < 0) {
      H_.negate_col(k);
      V_.negate_col(k);
    }
    for (std::size_t j = 0; j < k; ++j)
      if (!H_.at(i, j).is_zero())
        col_add(j, k, -floor_div(H_.at(i, j), H_.at(i, k)));
    pivots_.push_back(i);
    ++k;
  }
}

std::optional<std::vector<Integer>> Lattice::solve(
    const std::vector<Integer>& y) const {
  if (y.size() != dim_) throw std::invalid_argument("Lattice: dimension");
  std::vector<Integer> rest = y;
  std::vector<Integer> x(pivots_.size());
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    std::size_t p = pivots_[j];
    for (std::size_t i = (j == 0 ? 0 : pivots_[j - 1] + 1); i < p; ++i)
      if (!rest[i].is_zero()) return std::nullopt;
    if (rest[p].is_zero()) continue;
    if (!divides(H_.at(p, j), rest[p])) return std::nullopt;
    x[j] = exact_div(rest[p], H_.at(p, j));
    for (std::size_t i = p; i < dim_; ++i)
      if (!H_.at(i, j).is_zero()) rest[i].submul(x[j], H_.at(i, j));
  }
  for (const auto& v : rest)
    if (!v.is_zero()) return std::nullopt;
  std::vector<Integer> coeffs(ngens_);
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t g = 0; g < ngens_; ++g)
      if (!V_.at(g, j).is_zero()) coeffs[g].addmul(V_.at(g, j), x[j]);
  }
  return coeffs;
}

bool Lattice::contains(const std::vector<Integer>& y) const {
  return solve(y).has_value();
}

std::vector<std::vector<Integer>> Lattice::kernel() const {
  std::vector<std::vector<Integer>> out;
  for (std::size_t j = pivots_.size(); j < ngens_; ++j) out.push_back(V_.column(j));
  return out;
}

}  // namespace wtower
