#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace artifact {

using Int = boost::multiprecision::cpp_int;

std::string to_string(const Int& x);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> column(std::size_t j) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix& x, const IntMatrix& y);

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

std::vector<Int> mat_vec(const IntMatrix& m, const std::vector<Int>& v);

struct SmithForm {
    IntMatrix D, U, V;  // U * A * V == D
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& A);

// inverse of a unimodular matrix
IntMatrix unimodular_inverse(const IntMatrix& U);

// basis (as columns) of the integer kernel of A
IntMatrix integer_kernel(const IntMatrix& A);

// a basis of the lattice spanned by the columns of N
IntMatrix lattice_basis(const IntMatrix& N);

// some integral x with A x = b, if one exists
std::optional<std::vector<Int>> solve_integral(const IntMatrix& A, const std::vector<Int>& b);

// Solver that factors A once and answers many right-hand sides.
class IntegralSolver {
public:
    IntegralSolver() = default;
    explicit IntegralSolver(const IntMatrix& A);
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
    std::size_t unknowns() const { return cols_; }

private:
    SmithForm snf_;
    std::size_t rows_ = 0, cols_ = 0;
};

struct FGAbGroup {
    std::vector<std::pair<std::string, Int>> summands;  // order 0 means Z

    bool trivial() const { return summands.empty(); }
    std::size_t free_rank() const;
    Int torsion_order() const;  // product of the finite orders
    std::string str() const;
};

// Cyclic decomposition of ker(d_out)/im(d_in) on G = sum Z/orders[i].
// d_out lands in sum Z/target_orders[j]. Columns of `lifts` express each
// new generator in the coordinates of G.
struct Homology {
    std::vector<Int> orders;
    IntMatrix lifts;
};

Homology homology(const std::vector<Int>& orders, const IntMatrix& d_in, const IntMatrix& d_out,
                  const std::vector<Int>& target_orders);

// reduce x into [0, m) for m > 0; leave it alone for m == 0
Int reduce_mod(const Int& x, const Int& m);

Int gcd_int(const Int& a, const Int& b);
unsigned v2(const Int& n);
Int two_part(const Int& n);

}  // namespace artifact
