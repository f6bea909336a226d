#include "artifact/fiber_les.hpp"

#include <algorithm>

namespace artifact {

unsigned v2(long long n) {
    if (n <= 0) throw std::domain_error("v2 needs a positive integer");
    unsigned v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    return v;
}

unsigned val_3n_minus_1(long long n) {
    if (n <= 0) throw std::domain_error("val_3n_minus_1 needs a positive integer");
    unsigned v = v2(n);
    return v == 0 ? 1 : 2 + v;
}

namespace {

Element psi3_monomial(const RingPresentation& p, const Monomial& m) {
    const auto& table = p.raw().at("psi3");
    Element out = p.monomial_element(p.one());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        const auto& name = p.generators()[i].name;
        Element img = table.contains(name) ? p.from_poly(p.parse_poly_json(table[name])) : p.monomial_element(p.gen(name));
        for (int e = 0; e < m[i]; ++e) out = p.multiply(out, img);
    }
    return out;
}

}  // namespace

Element psi3(const RingPresentation& p, const Element& e) {
    Element out;
    for (const auto& [m, c] : e) out = add(out, scale(psi3_monomial(p, m), c));
    return p.normal_form(out);
}

IntMatrix psi3_minus_1_matrix(const RingPresentation& p, const TriDegree& d) {
    auto piece = p.basis_at(d);
    const std::size_t n = piece.basis.size();
    std::map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx[piece.basis[i].first] = i;
    IntMatrix M(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Monomial& m = piece.basis[j].first;
        Element v = add(psi3(p, p.monomial_element(m)), p.monomial_element(m, -1));
        for (const auto& [t, c] : v) M(idx.at(t), j) = reduce_mod(c, piece.basis[idx.at(t)].second);
    }
    return M;
}

FiberComplex::FiberComplex(RingPresentation base, RingPresentation ambient)
    : base_(std::move(base)), amb_(std::move(ambient)) {
    const auto& fib = amb_.raw().at("fiber");
    iota_ = amb_.index(fib.at("iota").get<std::string>());
    v_ = amb_.index(fib.at("v").get<std::string>());
    if (amb_.size() != base_.size() + 1) throw PresentationError(amb_.name() + ": ambient ring must add one generator");
    for (std::size_t i = 0; i < base_.size(); ++i)
        if (amb_.generators()[i].name != base_.generators()[i].name)
            throw PresentationError(amb_.name() + ": generator order differs from " + base_.name());

    for (std::size_t i = 0; i < base_.size(); ++i) {
        Monomial g = base_.one();
        g[i] = 1;
        Element img = psi3(base_, base_.monomial_element(g));
        if (img.size() != 1 || img.begin()->first != g)
            throw PresentationError("psi3 is not diagonal on " + base_.generators()[i].name);
        gen_lambda_.push_back(img.begin()->second);
    }

    auto sched = load_schedule(amb_);
    if (sched.count(1)) plain_ = sched.at(1);
    if (amb_.raw().contains("familyDifferentials"))
        for (const auto& f : amb_.raw()["familyDifferentials"]) {
            Family fam;
            fam.name = f.at("name").get<std::string>();
            fam.base = amb_.one();
            for (auto it = f.at("base").begin(); it != f.at("base").end(); ++it)
                fam.base[amb_.index(it.key())] = it.value().get<int>();
            for (const auto& t : f.at("odd")) {
                Monomial m = amb_.one();
                for (auto it = t.at(1).begin(); it != t.at(1).end(); ++it) m[amb_.index(it.key())] = it.value().get<int>();
                fam.odd.emplace_back(Int(t.at(0).get<long long>()), m, t.at(2).get<int>());
            }
            families_.push_back(std::move(fam));
        }
    base_cx_ = std::make_unique<RingComplex>(base_);
}

Int FiberComplex::lambda(const Monomial& b) const {
    Int l = 1;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (int e = 0; e < b[i]; ++e) l *= gen_lambda_[i];
    return l;
}

Monomial FiberComplex::to_ambient(const Monomial& b) const {
    Monomial m = amb_.one();
    std::copy(b.begin(), b.end(), m.begin());
    return m;
}

Monomial FiberComplex::to_base(const Monomial& m) const {
    Monomial b = base_.one();
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = m[i];
    return b;
}

std::optional<Int> FiberComplex::cell_order(const Monomial& m) const {
    if (m[iota_] > 1) return std::nullopt;
    Monomial b = to_base(m);
    if (!base_.is_normal(b)) return std::nullopt;
    Int o = base_.order_of(b);
    Int c = lambda(b) - 1;
    if (m[iota_] == 0) {
        if (o == 0) return c == 0 ? std::optional<Int>(0) : std::nullopt;
        Int g = two_part(gcd_int(c, o));
        if (g == o) return o;
        if (g == 1) return std::nullopt;
        throw std::logic_error("kernel of psi3 - 1 on " + base_.ascii(b) + " is not spanned by the monomial");
    }
    Int ord;
    if (o == 0) ord = c == 0 ? Int(0) : two_part(c < 0 ? Int(-c) : c);
    else ord = two_part(gcd_int(c, o));
    if (ord == 1) return std::nullopt;
    return ord;
}

std::vector<Cell> FiberComplex::cells(const TriDegree& d) const {
    std::vector<Cell> out;
    for (const auto& [b, o] : base_.basis_at(d).basis) {
        Monomial m = to_ambient(b);
        if (auto ord = cell_order(m)) out.push_back({m, *ord, false});
    }
    for (const auto& [b, o] : base_.basis_at(d - iota_shift()).basis) {
        Monomial m = to_ambient(b);
        m[iota_] = 1;
        if (auto ord = cell_order(m)) out.push_back({m, *ord, true});
    }
    return out;
}

Element FiberComplex::normalize(const Element& e) const {
    Element nf = amb_.normal_form(e);
    Element out;
    for (const auto& [m, c] : nf) {
        auto ord = cell_order(m);
        if (!ord) throw std::logic_error(amb_.name() + ": " + amb_.ascii(m) + " is not an E1 cell");
        Int r = reduce_mod(c, *ord);
        if (r != 0) out.emplace(m, r);
    }
    return out;
}

Element FiberComplex::d_plain(const Monomial& m) const { return leibniz_value(amb_, plain_, m); }

Element FiberComplex::d_family(const Family& fam, int j) const {
    Element out;
    if (j % 2 == 0) return out;
    for (const auto& [c, mono, sh] : fam.odd) {
        Monomial t = mono;
        t[v_] += j + sh;
        if (t[v_] < 0) throw std::logic_error("family " + fam.name + " value has a negative v exponent");
        add_term(out, t, c);
    }
    return out;
}

Element FiberComplex::d1(const Monomial& m) const {
    const int j = m[v_];
    const Family* fam = nullptr;
    for (const auto& f : families_) {
        bool is_iota = f.base[iota_] > 0;
        if (is_iota != (m[iota_] > 0)) continue;
        if (!is_iota && j == 0) continue;
        if (mono_divides(f.base, m)) {
            fam = &f;
            break;
        }
    }
    if (!fam) {
        if (j > 0 && m[iota_] == 0) throw std::logic_error(amb_.ascii(m) + " has no generator family");
        return normalize(d_plain(m));
    }
    Monomial fj = fam->base;
    fj[v_] += j;
    Monomial prefix = mono_div(m, fj);
    Element a = amb_.multiply(d_plain(prefix), amb_.monomial_element(fj));
    Element b = amb_.multiply(amb_.monomial_element(prefix), d_family(*fam, j));
    return normalize(add(a, b));
}

Element FiberComplex::restricted_d1(const Monomial& m) const {
    Element bd = base_cx_->d1(to_base(m));
    Element out;
    for (const auto& [b, c] : bd) {
        Monomial t = to_ambient(b);
        t[iota_] = m[iota_];
        add_term(out, t, c);
    }
    return normalize(out);
}

LesCheck les_check(const FiberComplex& L, const TriDegree& d) {
    LesCheck r;
    r.d = d;
    auto group_of = [](const std::vector<Int>& orders, std::size_t& free, Int& tors) {
        for (const auto& o : orders) {
            if (o == 0) ++free;
            else tors *= o;
        }
    };
    const auto& base = L.base();
    auto part = [&](const TriDegree& at, bool kernel) {
        auto piece = base.basis_at(at);
        std::vector<Int> orders;
        for (const auto& [m, o] : piece.basis) orders.push_back(o);
        IntMatrix M = psi3_minus_1_matrix(base, at);
        IntMatrix zero(orders.size(), 0);
        if (kernel) return homology(orders, zero, M, orders).orders;
        return homology(orders, M, IntMatrix(0, orders.size()), {}).orders;
    };
    group_of(part(d, true), r.free_ker, r.tors_ker);
    group_of(part(d - L.iota_shift(), false), r.free_coker, r.tors_coker);
    std::vector<Int> cells;
    for (const auto& c : L.cells(d)) cells.push_back(c.order);
    group_of(cells, r.free_L, r.tors_L);
    return r;
}

}  // namespace artifact
