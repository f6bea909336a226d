#pragma once

#include "artifact/algebra.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace artifact {

struct Cell {
    Monomial m;
    Int order;          // 0 = Z
    bool iota = false;  // lies in the image of the shifted cokernel
};

// An E_1 page: per-degree cells, d_1 on cells, and products.
class E1Complex {
public:
    virtual ~E1Complex() = default;

    virtual const std::string& name() const = 0;
    virtual const RingPresentation& ring() const = 0;
    virtual std::vector<Cell> cells(const TriDegree& d) const = 0;
    virtual Element d1(const Monomial& m) const = 0;
    virtual Element normalize(const Element& e) const = 0;

    virtual Element multiply(const Element& a, const Element& b) const { return normalize(ring().multiply(a, b)); }
    virtual TriDegree grade_of(const Monomial& m) const { return ring().grade_of(m); }
    // degree shift of d_r in the complex's grading
    virtual TriDegree shift(int r) const;
    virtual int coweight(const TriDegree& d) const;
    virtual bool tri_graded() const { return ring().grading() == Grading::Tri; }

    std::string term_label(const Monomial& m, const Int& c) const;
    std::string label(const Element& e) const;
};

using Schedule = std::map<int, std::map<std::size_t, Element>>;  // page -> generator -> value

Schedule load_schedule(const RingPresentation& p);

// d(m) for a monomial by the Leibniz rule from values on generators
Element leibniz_value(const RingPresentation& p, const std::map<std::size_t, Element>& values, const Monomial& m);

struct Window {
    TriDegree lo, hi;
    bool contains(const TriDegree& d) const {
        return d.s >= lo.s && d.s <= hi.s && d.f >= lo.f && d.f <= hi.f && d.w >= lo.w && d.w <= hi.w;
    }
    std::string str() const { return lo.str() + ".." + hi.str(); }
};

// Leibniz-extended differential on every basis monomial of the window
std::map<Monomial, Element> leibniz_extend(const RingPresentation& p, const Schedule& sched, int r, const Window& w);

class RingComplex : public E1Complex {
public:
    explicit RingComplex(RingPresentation p);

    const std::string& name() const override { return p_.name(); }
    const RingPresentation& ring() const override { return p_; }
    std::vector<Cell> cells(const TriDegree& d) const override;
    Element d1(const Monomial& m) const override;
    Element normalize(const Element& e) const override { return p_.normal_form(e); }

    const Schedule& schedule() const { return sched_; }

private:
    RingPresentation p_;
    Schedule sched_;
    std::optional<std::size_t> iota_;
};

struct Summand {
    std::vector<Int> lift;  // coordinates on the degree's E_1 cells
    Int order;
    bool iota = false;
    Monomial lead;
    std::string label;
};

struct DegPage {
    std::vector<Summand> summ;
    std::vector<std::vector<Int>> bnd;  // lattice basis of boundaries plus cell torsion
};

struct Page {
    int r = 1;
    std::map<TriDegree, DegPage> deg;
    std::map<TriDegree, IntMatrix> diff;  // d_r on summands, rows index target summands
};

class SpectralSequence;

// Source of differentials for pages r >= 2.
class HigherRule {
public:
    virtual ~HigherRule() = default;
    // value of d_r on summand idx at d, as coordinates in E_r(d + shift(r)); nullopt = 0
    virtual std::optional<std::vector<Int>> value(const SpectralSequence& ss, int r, const TriDegree& d,
                                                  std::size_t idx) = 0;
    // cheap test; false means d_r vanishes on every class at d
    virtual bool may_fire(const SpectralSequence&, int, const TriDegree&) const { return true; }
    virtual void after_page(const SpectralSequence&, int) {}
    std::vector<std::string> errors;
};

// Pages are computed lazily per degree: E_{r+1}(d) needs E_r at d and at the
// sources and targets of d_r that may be nonzero. run() fills the inner window.
class SpectralSequence {
public:
    SpectralSequence(const E1Complex& complex, Window inner, int r_max, std::shared_ptr<HigherRule> rule = nullptr);

    void run();

    const E1Complex& complex() const { return cx_; }
    const Window& inner() const { return inner_; }
    // nominal region the inner window depends on
    const Window& box() const { return box_; }
    int r_max() const { return r_max_; }
    bool in_box(const TriDegree& d) const { return box_.contains(d); }

    // page r for 1 <= r <= r_max + 1; the last one is E_infinity over the inner window.
    // Only degrees computed so far are present.
    const Page& page(int r) const { return pages_.at(r - 1); }
    const Page& einf() const { return pages_.back(); }
    int pages() const { return static_cast<int>(pages_.size()); }

    const std::vector<Cell>& cells(const TriDegree& d) const;
    const DegPage* at(int r, const TriDegree& d) const;
    const IntMatrix& diff(int r, const TriDegree& d) const;  // rows() == 0 means d_r = 0
    std::vector<Int> to_vector(const TriDegree& d, const Element& e) const;
    Element to_element(const TriDegree& d, const std::vector<Int>& v) const;
    // class of an E_1 element in E_r(d); nullopt when it is not an E_r cycle
    std::optional<std::vector<Int>> coords(int r, const TriDegree& d, const Element& e) const;
    std::optional<std::vector<Int>> coords_vec(int r, const TriDegree& d, const std::vector<Int>& z) const;
    Element lift_element(int r, const TriDegree& d, const std::vector<Int>& coords) const;
    bool is_zero_class(int r, const TriDegree& d, const std::vector<Int>& coords) const;

    // d_r of a summand as an E_1 element in the target degree
    Element differential_element(int r, const TriDegree& d, std::size_t idx) const;

    std::vector<TriDegree> inner_degrees() const;
    std::string dump(int r, const Window& w) const;
    std::string dump_einf(const Window& w) const;
    std::size_t differential_count(int r, const Window& w) const;

    std::vector<std::string> rule_errors() const { return rule_ ? rule_->errors : std::vector<std::string>{}; }

private:
    const DegPage& compute_page(int r, const TriDegree& d) const;
    IntMatrix compute_diff(int r, const TriDegree& d) const;
    Summand make_summand(const TriDegree& d, std::vector<Int> lift, const Int& order) const;

    const E1Complex& cx_;
    Window inner_, box_;
    int r_max_;
    std::shared_ptr<HigherRule> rule_;
    mutable std::map<TriDegree, std::vector<Cell>> cells_;
    mutable std::map<TriDegree, std::map<Monomial, std::size_t>> cell_index_;
    mutable std::vector<Page> pages_;
    mutable std::map<std::pair<int, TriDegree>, std::unique_ptr<IntegralSolver>> solvers_;
};

// rule for the eta-periodic objects: d_{n+1}(v^{2^n}) = rho^{n+1} * iota v^{2^n}
class LadderRule : public HigherRule {
public:
    LadderRule(std::string v, std::string rho, std::string iota, std::string tau, int from);
    std::optional<std::vector<Int>> value(const SpectralSequence& ss, int r, const TriDegree& d,
                                          std::size_t idx) override;
    bool may_fire(const SpectralSequence&, int r, const TriDegree&) const override { return r - 1 >= from_; }

private:
    std::string v_, rho_, iota_, tau_;
    int from_;
};

// pattern for L on pages r >= 2: in coweight c = 0 mod 4 every non-excluded class
// outside the iota image supports a d_r, r = v(c) + 1, hitting the unique nonzero
// class of the target degree
class CoweightRule : public HigherRule {
public:
    explicit CoweightRule(const nlohmann::json& cfg);
    std::optional<std::vector<Int>> value(const SpectralSequence& ss, int r, const TriDegree& d,
                                          std::size_t idx) override;
    bool may_fire(const SpectralSequence& ss, int r, const TriDegree& d) const override;
    void after_page(const SpectralSequence& ss, int r) override;
    bool excluded(const SpectralSequence& ss, const TriDegree& d, const Summand& x) const;
    static int page_for(int coweight);

    std::size_t assigned = 0;

private:
    std::string tau_;
    std::set<std::string> free_;
};

std::shared_ptr<HigherRule> make_rule(const E1Complex& cx);

}  // namespace artifact
