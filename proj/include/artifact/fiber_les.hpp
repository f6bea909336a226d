#pragma once

#include "artifact/ss_engine.hpp"

namespace artifact {

// 2-adic valuation of a positive integer
unsigned v2(long long n);
// v2(3^n - 1) by the closed form
unsigned val_3n_minus_1(long long n);

// psi^3 as a ring map, from the "psi3" table of the presentation
Element psi3(const RingPresentation& p, const Element& e);
// psi^3 - 1 on basis_at(p, d), columns indexed by the basis
IntMatrix psi3_minus_1_matrix(const RingPresentation& p, const TriDegree& d);

// E_1 of the fiber of psi^3 - 1 on a base ring (ko or ko_C). Cells are the kernel
// of psi^3 - 1 on E_1(base) plus the shifted cokernel, written iota * m. Products
// happen in an ambient ring with the base generators followed by iota.
class FiberComplex : public E1Complex {
public:
    FiberComplex(RingPresentation base, RingPresentation ambient);

    const std::string& name() const override { return amb_.name(); }
    const RingPresentation& ring() const override { return amb_; }
    std::vector<Cell> cells(const TriDegree& d) const override;
    Element d1(const Monomial& m) const override;
    Element normalize(const Element& e) const override;

    const RingPresentation& base() const { return base_; }
    std::size_t iota() const { return iota_; }
    TriDegree iota_shift() const { return amb_.generators()[iota_].degree; }

    // psi^3 eigenvalue of a base monomial (psi^3 is diagonal on monomials)
    Int lambda(const Monomial& base_mono) const;
    // order of an ambient monomial as an E_1(L) cell; nullopt when it is not a cell
    std::optional<Int> cell_order(const Monomial& m) const;

    Monomial to_ambient(const Monomial& base_mono) const;
    Monomial to_base(const Monomial& m) const;  // drops iota

    // d_1 restricted from the base: d(m) on kernel cells, iota * d(m') on iota * m'
    Element restricted_d1(const Monomial& m) const;

    // generator family table read from the presentation
    struct Family {
        std::string name;
        Monomial base;
        std::vector<std::tuple<Int, Monomial, int>> odd;  // coef, monomial, shift of the v exponent
    };
    const std::vector<Family>& families() const { return families_; }
    std::size_t v_index() const { return v_; }

private:
    Element d_plain(const Monomial& m) const;
    Element d_family(const Family& fam, int j) const;

    RingPresentation base_, amb_;
    std::size_t iota_ = 0, v_ = 0;
    std::vector<Int> gen_lambda_;
    std::map<std::size_t, Element> plain_;
    std::vector<Family> families_;
    std::unique_ptr<E1Complex> base_cx_;
};

// per-degree exactness data for the fiber construction
struct LesCheck {
    TriDegree d;
    std::size_t free_L = 0, free_ker = 0, free_coker = 0;
    Int tors_L = 1, tors_ker = 1, tors_coker = 1;
    // the cells keep only the 2-part of 9^k - 1
    bool ok() const { return free_L == free_ker + free_coker && tors_L == two_part(tors_ker * tors_coker); }
};

// kernel at d and cokernel at d - iota shift, both from the SNF of psi^3 - 1 on the
// integer lattice (true eigenvalues, no 2-local shortcut), against the cells of E_1(L)
LesCheck les_check(const FiberComplex& L, const TriDegree& d);

}  // namespace artifact
