#include "artifact/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace artifact {

std::string to_string(const Int& x) { return x.str(); }

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t k = 0; k < x.cols_; ++k) {
            const Int& a = x(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += a * y(k, j);
        }
    return z;
}

bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<Int> mat_vec(const IntMatrix& m, const std::vector<Int>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec shape mismatch");
    std::vector<Int> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (v[j] != 0) out[i] += m(i, j) * v[j];
    return out;
}

Int reduce_mod(const Int& x, const Int& m) {
    if (m == 0) return x;
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int gcd_int(const Int& a, const Int& b) {
    Int x = abs(a), y = abs(b);
    while (y != 0) {
        Int t = x % y;
        x = y;
        y = t;
    }
    return x;
}

unsigned v2(const Int& n) {
    if (n == 0) throw std::domain_error("v2 of zero");
    unsigned v = 0;
    Int m = abs(n);
    while ((m & 1) == 0) {
        m >>= 1;
        ++v;
    }
    return v;
}

Int two_part(const Int& n) {
    if (n == 0) return 0;
    return Int(1) << v2(n);
}

namespace {

struct SnfWork {
    IntMatrix D, U, Uinv, V;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
        for (std::size_t i = 0; i < Uinv.rows(); ++i) std::swap(Uinv(i, a), Uinv(i, b));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    }
    // row_i += q * row_t
    void add_row(std::size_t i, std::size_t t, const Int& q) {
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (D(t, j) != 0) D(i, j) += q * D(t, j);
        for (std::size_t j = 0; j < U.cols(); ++j)
            if (U(t, j) != 0) U(i, j) += q * U(t, j);
        for (std::size_t r = 0; r < Uinv.rows(); ++r)
            if (Uinv(r, i) != 0) Uinv(r, t) -= q * Uinv(r, i);
    }
    // col_j += q * col_t
    void add_col(std::size_t j, std::size_t t, const Int& q) {
        for (std::size_t i = 0; i < D.rows(); ++i)
            if (D(i, t) != 0) D(i, j) += q * D(i, t);
        for (std::size_t i = 0; i < V.rows(); ++i)
            if (V(i, t) != 0) V(i, j) += q * V(i, t);
    }
    void negate_row(std::size_t t) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(t, j) = -D(t, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
        for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, t) = -Uinv(i, t);
    }
};

struct FullSmith {
    SmithForm form;
    IntMatrix Uinv;
};

FullSmith full_smith(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SnfWork w{A, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
    std::size_t t = 0;
    while (t < std::min(m, n)) {
        // smallest nonzero entry of the remaining block becomes the pivot
        std::size_t pi = m, pj = n;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = w.D(i, j);
                if (x == 0) continue;
                if (pi == m || abs(x) < best) {
                    best = abs(x);
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < m && !again; ++i) {
                if (w.D(i, t) == 0) continue;
                Int q = w.D(i, t) / w.D(t, t);
                w.add_row(i, t, -q);
                if (w.D(i, t) != 0) {
                    w.swap_rows(t, i);
                    again = true;
                }
            }
            if (again) continue;
            for (std::size_t j = t + 1; j < n && !again; ++j) {
                if (w.D(t, j) == 0) continue;
                Int q = w.D(t, j) / w.D(t, t);
                w.add_col(j, t, -q);
                if (w.D(t, j) != 0) {
                    w.swap_cols(t, j);
                    again = true;
                }
            }
            if (again) continue;
            bool col_clear = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (w.D(i, t) != 0) col_clear = false;
            if (!col_clear) continue;
            // divisibility of the rest of the block by the pivot
            for (std::size_t i = t + 1; i < m && !again; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (w.D(i, j) % w.D(t, t) != 0) {
                        w.add_row(t, i, 1);
                        again = true;
                        break;
                    }
            if (!again) break;
        }
        if (w.D(t, t) < 0) w.negate_row(t);
        ++t;
    }
    FullSmith out;
    out.form.D = std::move(w.D);
    out.form.U = std::move(w.U);
    out.form.V = std::move(w.V);
    out.form.rank = t;
    out.Uinv = std::move(w.Uinv);
    return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) { return full_smith(A).form; }

IntMatrix unimodular_inverse(const IntMatrix& U) {
    if (U.rows() != U.cols()) throw std::invalid_argument("inverse of non-square matrix");
    auto fs = full_smith(U);
    for (std::size_t i = 0; i < U.rows(); ++i)
        if (fs.form.D(i, i) != 1) throw std::domain_error("matrix is not unimodular");
    // D = S U V with D = I, so U^{-1} = V S
    return fs.form.V * fs.form.U;
}

IntMatrix integer_kernel(const IntMatrix& A) {
    auto snf = smith_normal_form(A);
    std::size_t n = A.cols();
    IntMatrix K(n, n - snf.rank);
    for (std::size_t j = snf.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) K(i, j - snf.rank) = snf.V(i, j);
    return K;
}

IntMatrix lattice_basis(const IntMatrix& N) {
    auto fs = full_smith(N);
    const std::size_t m = N.rows(), r = fs.form.rank;
    IntMatrix B(m, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < m; ++i) B(i, j) = fs.Uinv(i, j) * fs.form.D(j, j);
    return B;
}

IntegralSolver::IntegralSolver(const IntMatrix& A) : snf_(smith_normal_form(A)), rows_(A.rows()), cols_(A.cols()) {}

std::optional<std::vector<Int>> IntegralSolver::solve(const std::vector<Int>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("solver rhs size mismatch");
    std::vector<Int> ub = mat_vec(snf_.U, b);
    std::vector<Int> y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i < snf_.rank) {
            const Int& d = snf_.D(i, i);
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(snf_.V, y);
}

std::optional<std::vector<Int>> solve_integral(const IntMatrix& A, const std::vector<Int>& b) {
    return IntegralSolver(A).solve(b);
}

std::size_t FGAbGroup::free_rank() const {
    return static_cast<std::size_t>(
        std::count_if(summands.begin(), summands.end(), [](const auto& s) { return s.second == 0; }));
}

Int FGAbGroup::torsion_order() const {
    Int o = 1;
    for (const auto& s : summands)
        if (s.second != 0) o *= s.second;
    return o;
}

std::string FGAbGroup::str() const {
    if (summands.empty()) return "0";
    std::string out;
    for (const auto& [label, order] : summands) {
        if (!out.empty()) out += " + ";
        out += order == 0 ? "Z" : "Z/" + order.str();
        if (!label.empty()) out += "{" + label + "}";
    }
    return out;
}

Homology homology(const std::vector<Int>& orders, const IntMatrix& d_in, const IntMatrix& d_out,
                  const std::vector<Int>& target_orders) {
    const std::size_t p = orders.size();
    if (d_in.rows() != p) throw std::invalid_argument("homology: d_in has wrong row count");
    if (d_out.cols() != p) throw std::invalid_argument("homology: d_out has wrong column count");
    if (d_out.rows() != target_orders.size()) throw std::invalid_argument("homology: target size mismatch");
    const std::size_t q = d_out.rows();

    // d_out must be well defined on the torsion of G and kill the image of d_in
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t i = 0; i < p; ++i)
            if (orders[i] != 0 && reduce_mod(d_out(j, i) * orders[i], target_orders[j]) != 0)
                throw std::logic_error("homology: outgoing map not defined on torsion");
        for (std::size_t k = 0; k < d_in.cols(); ++k) {
            Int acc = 0;
            for (std::size_t i = 0; i < p; ++i) acc += d_out(j, i) * d_in(i, k);
            if (reduce_mod(acc, target_orders[j]) != 0)
                throw std::logic_error("homology: composite of differentials is nonzero");
        }
    }

    Homology h;
    if (p == 0) {
        h.lifts = IntMatrix(0, 0);
        return h;
    }

    IntMatrix Kb;
    if (q == 0) {
        Kb = IntMatrix::identity(p);
    } else {
        std::size_t nb = 0;
        for (const auto& b : target_orders)
            if (b != 0) ++nb;
        IntMatrix A(q, p + nb);
        for (std::size_t j = 0; j < q; ++j)
            for (std::size_t i = 0; i < p; ++i) A(j, i) = d_out(j, i);
        std::size_t c = p;
        for (std::size_t j = 0; j < q; ++j)
            if (target_orders[j] != 0) A(j, c++) = target_orders[j];
        IntMatrix ker = integer_kernel(A);
        IntMatrix proj(p, ker.cols());
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t k = 0; k < ker.cols(); ++k) proj(i, k) = ker(i, k);
        Kb = lattice_basis(proj);
    }
    const std::size_t k = Kb.cols();
    if (k == 0) {
        h.lifts = IntMatrix(p, 0);
        return h;
    }

    std::vector<std::vector<Int>> sub;
    for (std::size_t c = 0; c < d_in.cols(); ++c) sub.push_back(d_in.column(c));
    for (std::size_t i = 0; i < p; ++i)
        if (orders[i] != 0) {
            std::vector<Int> e(p);
            e[i] = orders[i];
            sub.push_back(std::move(e));
        }
    IntegralSolver in_k(Kb);
    IntMatrix R(k, sub.size());
    for (std::size_t c = 0; c < sub.size(); ++c) {
        auto x = in_k.solve(sub[c]);
        if (!x) throw std::logic_error("homology: boundary outside the cycles");
        for (std::size_t i = 0; i < k; ++i) R(i, c) = (*x)[i];
    }
    auto fs = full_smith(R);
    IntMatrix gens = Kb * fs.Uinv;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i) {
        Int d = i < fs.form.rank ? fs.form.D(i, i) : Int(0);
        if (d == 1) continue;
        keep.push_back(i);
        h.orders.push_back(d);
    }
    h.lifts = IntMatrix(p, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < p; ++i) h.lifts(i, c) = reduce_mod(gens(i, keep[c]), orders[i]);
    return h;
}

}  // namespace artifact
