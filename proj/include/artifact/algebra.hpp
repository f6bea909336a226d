#pragma once

#include "artifact/intlinalg.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace artifact {

struct TriDegree {
    int s = 0, f = 0, w = 0;

    int coweight() const { return s - w; }

    TriDegree operator+(const TriDegree& o) const { return {s + o.s, f + o.f, w + o.w}; }
    TriDegree operator-(const TriDegree& o) const { return {s - o.s, f - o.f, w - o.w}; }
    TriDegree operator*(int k) const { return {s * k, f * k, w * k}; }
    auto operator<=>(const TriDegree&) const = default;

    std::string str() const;
};

class PresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
    std::string name;
    TriDegree degree;
    Int torsion = 0;          // 0: coefficients in Z
    std::optional<int> cap;   // max exponent in normal form
    std::string display;      // printed symbol
    int step = 1;             // printed exponent = step * exponent
};

using Monomial = std::vector<int>;      // exponents in generator order
using Element = std::map<Monomial, Int>;

struct RewriteRule {
    Monomial lhs;
    Element rhs;
};

using Poly = std::vector<std::pair<Int, Monomial>>;  // raw json-style term list

struct GradedPiece {
    std::vector<std::pair<Monomial, Int>> basis;  // monomial and cyclic order (0 = Z)
};

// Grading used for basis enumeration. The eta-periodic presentations collapse
// the h1 direction and are graded by (coweight, f - s).
enum class Grading { Tri, Eta };

class RingPresentation {
public:
    static RingPresentation from_json(const nlohmann::json& j);
    static RingPresentation load(const std::string& path);

    const std::string& name() const { return name_; }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    std::optional<Int> global_torsion() const { return global_torsion_; }
    Grading grading() const { return grading_; }
    const nlohmann::json& raw() const { return raw_; }

    std::size_t size() const { return gens_.size(); }
    std::size_t index(const std::string& gen) const;
    bool has(const std::string& gen) const { return index_.count(gen) != 0; }

    Monomial one() const { return Monomial(gens_.size(), 0); }
    Monomial gen(const std::string& name, int exp = 1) const;

    TriDegree degree_of(const Monomial& m) const;       // tri-degree from the generator table
    TriDegree grade_of(const Monomial& m) const;        // degree in the enumeration grading
    TriDegree grade_of_tri(const TriDegree& d) const;   // convert a tri-degree to the grading

    Int order_of(const Monomial& m) const;
    bool is_normal(const Monomial& m) const;

    Element normal_form(const Element& e) const;
    Element multiply(const Element& a, const Element& b) const;
    Element monomial_element(const Monomial& m, const Int& c = 1) const;
    Element from_poly(const Poly& p) const;
    Poly parse_poly_json(const nlohmann::json& j) const;

    // basis of normal-form monomials at a degree of this presentation's grading
    GradedPiece basis_at(const TriDegree& d) const;

    std::string format(const Monomial& m) const;
    std::string format(const Element& e) const;
    std::string ascii(const Monomial& m) const;
    Element parse(const std::string& text) const;

    nlohmann::json to_json() const;

private:
    void check_rules() const;
    void find_functional();
    void enumerate(std::size_t gi, const TriDegree& rem, Monomial& cur, std::vector<Monomial>& out,
                   const TriDegree& target) const;

    std::string name_;
    std::vector<GeneratorSpec> gens_;
    std::vector<RewriteRule> rules_;
    std::optional<Int> global_torsion_;
    Grading grading_ = Grading::Tri;
    std::map<std::string, std::size_t> index_;
    std::vector<TriDegree> grade_;       // generator degrees in the enumeration grading
    std::vector<int> functional_;        // positive on every uncapped generator
    std::vector<std::size_t> order_;     // looped generators, capped first
    std::vector<std::size_t> solved_;    // generators solved for at the end of the loop
    std::vector<int> solve_coords_;
    nlohmann::json raw_;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& b, const Monomial& a);
bool mono_is_one(const Monomial& m);

void add_term(Element& e, const Monomial& m, const Int& c);
Element scale(const Element& e, const Int& c);
Element add(const Element& a, const Element& b);

}  // namespace artifact
