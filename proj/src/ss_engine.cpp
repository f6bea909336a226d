#include "artifact/ss_engine.hpp"

#include <algorithm>
#include <sstream>

namespace artifact {

TriDegree E1Complex::shift(int r) const {
    if (tri_graded()) return {-1, 2 * r + 1, 0};
    // (coweight, f - s) once h1 is inverted
    return {-1, 2 * r + 2, 0};
}

int E1Complex::coweight(const TriDegree& d) const { return tri_graded() ? d.coweight() : d.s; }

std::string E1Complex::term_label(const Monomial& m, const Int& c) const {
    const auto& gens = ring().generators();
    Monomial front = ring().one(), back = m;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (ring().raw().contains("prefix") && m[i] > 0) {
            for (const auto& p : ring().raw()["prefix"])
                if (p.get<std::string>() == gens[i].name) {
                    front[i] = m[i];
                    back[i] = 0;
                }
        }
    std::string out = mono_is_one(front) ? "" : ring().format(front);
    if (c != 1) out += c.str();
    if (!mono_is_one(back)) out += ring().format(back);
    if (out.empty()) out = "1";
    return out;
}

std::string E1Complex::label(const Element& e) const {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : e) {
        if (!out.empty()) out += " + ";
        out += term_label(m, c);
    }
    return out;
}

Schedule load_schedule(const RingPresentation& p) {
    Schedule s;
    if (!p.raw().contains("differentials")) return s;
    for (auto it = p.raw()["differentials"].begin(); it != p.raw()["differentials"].end(); ++it) {
        int r = std::stoi(it.key());
        for (auto g = it.value().begin(); g != it.value().end(); ++g) {
            std::size_t gi = p.index(g.key());
            Element v = p.from_poly(p.parse_poly_json(g.value()));
            TriDegree want = p.grade_of(p.gen(g.key()));
            TriDegree shift = p.grading() == Grading::Tri ? TriDegree{-1, 2 * r + 1, 0} : TriDegree{-1, 2 * r + 2, 0};
            for (const auto& [m, c] : v)
                if (p.grade_of(m) != want + shift)
                    throw PresentationError("differential on " + g.key() + " has the wrong degree");
            s[r][gi] = v;
        }
    }
    return s;
}

Element leibniz_value(const RingPresentation& p, const std::map<std::size_t, Element>& values, const Monomial& m) {
    Element out;
    for (const auto& [gi, val] : values) {
        if (m[gi] == 0) continue;
        Monomial rest = m;
        rest[gi] -= 1;
        Element term = p.multiply(p.monomial_element(rest, m[gi]), val);
        out = add(out, term);
    }
    return p.normal_form(out);
}

std::map<Monomial, Element> leibniz_extend(const RingPresentation& p, const Schedule& sched, int r, const Window& w) {
    std::map<Monomial, Element> out;
    auto it = sched.find(r);
    std::map<std::size_t, Element> none;
    const auto& vals = it == sched.end() ? none : it->second;
    for (int s = w.lo.s; s <= w.hi.s; ++s)
        for (int f = w.lo.f; f <= w.hi.f; ++f)
            for (int wt = w.lo.w; wt <= w.hi.w; ++wt)
                for (const auto& [m, o] : p.basis_at({s, f, wt}).basis) out[m] = leibniz_value(p, vals, m);
    return out;
}

RingComplex::RingComplex(RingPresentation p) : p_(std::move(p)), sched_(load_schedule(p_)) {
    if (p_.raw().contains("iota")) iota_ = p_.index(p_.raw()["iota"].get<std::string>());
}

std::vector<Cell> RingComplex::cells(const TriDegree& d) const {
    std::vector<Cell> out;
    for (const auto& [m, o] : p_.basis_at(d).basis) out.push_back({m, o, iota_ && m[*iota_] > 0});
    return out;
}

Element RingComplex::d1(const Monomial& m) const {
    auto it = sched_.find(1);
    if (it == sched_.end()) return {};
    return leibniz_value(p_, it->second, m);
}

// ---------------------------------------------------------------------------

SpectralSequence::SpectralSequence(const E1Complex& complex, Window inner, int r_max, std::shared_ptr<HigherRule> rule)
    : cx_(complex), inner_(inner), r_max_(r_max), rule_(std::move(rule)) {
    if (r_max_ < 1) throw std::invalid_argument("r_max must be at least 1");
    TriDegree margin{0, 0, 0};
    for (int r = 1; r <= r_max_; ++r) {
        TriDegree sh = cx_.shift(r);
        margin = margin + TriDegree{std::abs(sh.s), std::abs(sh.f), std::abs(sh.w)};
    }
    box_ = {inner_.lo - margin, inner_.hi + margin};
    if (cx_.tri_graded() && box_.lo.f < 0) box_.lo.f = 0;
    pages_.resize(r_max_ + 1);
    for (int r = 1; r <= r_max_ + 1; ++r) pages_[r - 1].r = r;
}

std::vector<TriDegree> SpectralSequence::inner_degrees() const {
    std::vector<TriDegree> out;
    for (int s = inner_.lo.s; s <= inner_.hi.s; ++s)
        for (int f = inner_.lo.f; f <= inner_.hi.f; ++f)
            for (int w = inner_.lo.w; w <= inner_.hi.w; ++w) {
                TriDegree d{s, f, w};
                if (!cells(d).empty()) out.push_back(d);
            }
    return out;
}

void SpectralSequence::run() {
    const auto degs = inner_degrees();
    for (int r = 1; r <= r_max_; ++r) {
        for (const auto& d : degs) diff(r, d);
        for (const auto& d : degs) at(r + 1, d);
        if (rule_) rule_->after_page(*this, r);
    }
}

const std::vector<Cell>& SpectralSequence::cells(const TriDegree& d) const {
    auto it = cells_.find(d);
    if (it != cells_.end()) return it->second;
    auto cs = cx_.cells(d);
    std::sort(cs.begin(), cs.end(), [](const Cell& a, const Cell& b) { return a.m < b.m; });
    auto& idx = cell_index_[d];
    for (std::size_t i = 0; i < cs.size(); ++i) idx[cs[i].m] = i;
    return cells_.emplace(d, std::move(cs)).first->second;
}

const DegPage* SpectralSequence::at(int r, const TriDegree& d) const {
    if (r < 1 || r > r_max_ + 1) throw std::out_of_range("page " + std::to_string(r) + " was not requested");
    if (cells(d).empty()) return nullptr;
    return &compute_page(r, d);
}

const DegPage& SpectralSequence::compute_page(int r, const TriDegree& d) const {
    auto& deg = pages_[r - 1].deg;
    auto it = deg.find(d);
    if (it != deg.end()) return it->second;
    const auto& cs = cells(d);
    DegPage out;
    if (r == 1) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::vector<Int> e(cs.size());
            e[i] = 1;
            if (cs[i].order != 0) {
                std::vector<Int> t(cs.size());
                t[i] = cs[i].order;
                out.bnd.push_back(std::move(t));
            }
            out.summ.push_back(make_summand(d, std::move(e), cs[i].order));
        }
        return deg.emplace(d, std::move(out)).first->second;
    }
    const int q = r - 1;
    const TriDegree sh = cx_.shift(q);
    const DegPage& dp = compute_page(q, d);
    const IntMatrix& d_out = diff(q, d);
    const TriDegree src = d - sh;
    IntMatrix d_in(dp.summ.size(), 0);
    if (!cells(src).empty()) {
        const IntMatrix& m = diff(q, src);
        if (m.rows()) d_in = m;
    }
    if (d_out.rows() == 0 && d_in.cols() == 0) return deg.emplace(d, dp).first->second;

    std::vector<Int> orders, tord;
    for (const auto& s : dp.summ) orders.push_back(s.order);
    IntMatrix out_m = d_out;
    if (d_out.rows()) {
        for (const auto& s : compute_page(q, d + sh).summ) tord.push_back(s.order);
    } else {
        out_m = IntMatrix(0, dp.summ.size());
    }
    Homology h;
    try {
        h = homology(orders, d_in, out_m, tord);
    } catch (const std::logic_error& e) {
        throw std::logic_error(std::string(e.what()) + " at " + d.str() + " on page " + std::to_string(q));
    }
    const std::size_t n = cs.size();
    for (std::size_t k = 0; k < h.orders.size(); ++k) {
        std::vector<Int> lift(n);
        for (std::size_t j = 0; j < dp.summ.size(); ++j)
            if (h.lifts(j, k) != 0)
                for (std::size_t i = 0; i < n; ++i) lift[i] += h.lifts(j, k) * dp.summ[j].lift[i];
        out.summ.push_back(make_summand(d, std::move(lift), h.orders[k]));
    }
    // boundaries so far, plus the image of d_q lifted to E_1 coordinates
    std::vector<std::vector<Int>> gens = dp.bnd;
    for (std::size_t c = 0; c < d_in.cols(); ++c) {
        std::vector<Int> b(n);
        bool nz = false;
        for (std::size_t j = 0; j < dp.summ.size(); ++j)
            if (d_in(j, c) != 0) {
                nz = true;
                for (std::size_t i = 0; i < n; ++i) b[i] += d_in(j, c) * dp.summ[j].lift[i];
            }
        if (nz) gens.push_back(std::move(b));
    }
    if (gens.size() > dp.bnd.size()) {
        IntMatrix G(n, gens.size());
        for (std::size_t c = 0; c < gens.size(); ++c)
            for (std::size_t i = 0; i < n; ++i) G(i, c) = gens[c][i];
        IntMatrix B = lattice_basis(G);
        for (std::size_t c = 0; c < B.cols(); ++c) out.bnd.push_back(B.column(c));
    } else {
        out.bnd = dp.bnd;
    }
    return deg.emplace(d, std::move(out)).first->second;
}

const IntMatrix& SpectralSequence::diff(int r, const TriDegree& d) const {
    if (r < 1 || r > r_max_) throw std::out_of_range("differential d_" + std::to_string(r) + " was not requested");
    auto& dm = pages_[r - 1].diff;
    auto it = dm.find(d);
    if (it != dm.end()) return it->second;
    IntMatrix m = compute_diff(r, d);
    return dm.emplace(d, std::move(m)).first->second;
}

IntMatrix SpectralSequence::compute_diff(int r, const TriDegree& d) const {
    if (cells(d).empty()) return {};
    const TriDegree t = d + cx_.shift(r);
    if (cells(t).empty()) return {};
    if (r >= 2 && (!rule_ || !rule_->may_fire(*this, r, d))) return {};
    const DegPage& dp = compute_page(r, d);
    if (dp.summ.empty()) return {};
    const DegPage& tp = compute_page(r, t);
    if (tp.summ.empty()) return {};
    IntMatrix M(tp.summ.size(), dp.summ.size());
    bool any = false;
    for (std::size_t j = 0; j < dp.summ.size(); ++j) {
        std::optional<std::vector<Int>> col;
        if (r == 1) {
            Element val;
            const auto& cs = cells(d);
            for (std::size_t i = 0; i < cs.size(); ++i)
                if (dp.summ[j].lift[i] != 0) val = add(val, scale(cx_.d1(cs[i].m), dp.summ[j].lift[i]));
            val = cx_.normalize(val);
            if (val.empty()) continue;
            col = coords(r, t, val);
            if (!col) throw std::logic_error("d1 value is not a class at " + t.str());
        } else {
            col = rule_->value(*this, r, d, j);
        }
        if (!col) continue;
        for (std::size_t i = 0; i < tp.summ.size(); ++i) {
            M(i, j) = reduce_mod((*col)[i], tp.summ[i].order);
            if (M(i, j) != 0) any = true;
        }
    }
    if (!any) return {};
    return M;
}

std::vector<Int> SpectralSequence::to_vector(const TriDegree& d, const Element& e) const {
    const auto& cs = cells(d);
    std::vector<Int> v(cs.size());
    if (e.empty()) return v;
    const auto& idx = cell_index_.at(d);
    for (const auto& [m, c] : e) {
        auto it = idx.find(m);
        if (it == idx.end()) throw std::logic_error("monomial " + cx_.ring().ascii(m) + " is not an E1 cell at " + d.str());
        v[it->second] = reduce_mod(v[it->second] + c, cs[it->second].order);
    }
    return v;
}

Element SpectralSequence::to_element(const TriDegree& d, const std::vector<Int>& v) const {
    const auto& cs = cells(d);
    Element e;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int c = reduce_mod(v[i], cs[i].order);
        if (c != 0) e.emplace(cs[i].m, c);
    }
    return e;
}

std::optional<std::vector<Int>> SpectralSequence::coords_vec(int r, const TriDegree& d, const std::vector<Int>& z) const {
    const DegPage* dp = at(r, d);
    bool zero = std::all_of(z.begin(), z.end(), [](const Int& x) { return x == 0; });
    if (!dp) {
        if (zero) return std::vector<Int>{};
        return std::nullopt;
    }
    auto key = std::make_pair(r, d);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) {
        const std::size_t n = cells(d).size();
        IntMatrix A(n, dp->summ.size() + dp->bnd.size());
        std::size_t c = 0;
        for (const auto& s : dp->summ) {
            for (std::size_t i = 0; i < n; ++i) A(i, c) = s.lift[i];
            ++c;
        }
        for (const auto& b : dp->bnd) {
            for (std::size_t i = 0; i < n; ++i) A(i, c) = b[i];
            ++c;
        }
        it = solvers_.emplace(key, std::make_unique<IntegralSolver>(A)).first;
    }
    auto x = it->second->solve(z);
    if (!x) return std::nullopt;
    std::vector<Int> out(dp->summ.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce_mod((*x)[i], dp->summ[i].order);
    return out;
}

std::optional<std::vector<Int>> SpectralSequence::coords(int r, const TriDegree& d, const Element& e) const {
    return coords_vec(r, d, to_vector(d, e));
}

Element SpectralSequence::lift_element(int r, const TriDegree& d, const std::vector<Int>& coords) const {
    const DegPage* dp = at(r, d);
    if (!dp) return {};
    std::vector<Int> v(cells(d).size());
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0)
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += coords[k] * dp->summ[k].lift[i];
    return to_element(d, v);
}

bool SpectralSequence::is_zero_class(int r, const TriDegree& d, const std::vector<Int>& coords) const {
    const DegPage* dp = at(r, d);
    if (!dp) return true;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (reduce_mod(coords[k], dp->summ[k].order) != 0) return false;
    return true;
}

Element SpectralSequence::differential_element(int r, const TriDegree& d, std::size_t idx) const {
    const IntMatrix& m = diff(r, d);
    if (m.rows() == 0) return {};
    return lift_element(r, d + cx_.shift(r), m.column(idx));
}

Summand SpectralSequence::make_summand(const TriDegree& d, std::vector<Int> lift, const Int& order) const {
    const auto& cs = cells(d);
    Summand s;
    s.order = order;
    auto lead_of = [&]() {
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (lift[i] != 0) return i;
        return cs.size();
    };
    for (std::size_t i = 0; i < cs.size(); ++i) lift[i] = reduce_mod(lift[i], cs[i].order);
    std::size_t lead = lead_of();
    if (lead == cs.size()) throw std::logic_error("zero generator at " + d.str());
    if (order == 0 && lift[lead] < 0) {
        for (auto& x : lift) x = -x;
        for (std::size_t i = 0; i < cs.size(); ++i) lift[i] = reduce_mod(lift[i], cs[i].order);
    } else if (order > 0) {
        // rescale by a unit mod the order so the leading coefficient is a power of two
        Int c = lift[lead];
        Int u = c >> v2(c);
        if (u != 1) {
            Int inv = 1;
            for (int k = 0; k < 12; ++k) inv = reduce_mod(inv * (2 - u * inv), order);
            for (std::size_t i = 0; i < cs.size(); ++i) lift[i] = reduce_mod(lift[i] * inv, cs[i].order);
            lead = lead_of();
        }
    }
    s.iota = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (lift[i] != 0 && !cs[i].iota) s.iota = false;
    s.lead = cs[lead].m;
    s.label = cx_.term_label(cs[lead].m, lift[lead]);
    s.lift = std::move(lift);
    return s;
}

namespace {

std::string order_str(const Int& o) { return o == 0 ? "Z" : "Z/" + o.str(); }

}  // namespace

std::string SpectralSequence::dump(int r, const Window& w) const {
    std::ostringstream os;
    const Page& pg = page(r);
    const TriDegree sh = cx_.shift(r);
    for (const auto& [d, dp] : pg.deg) {
        if (!w.contains(d) || !inner_.contains(d)) continue;
        const IntMatrix* m = r <= r_max_ ? &diff(r, d) : nullptr;
        for (std::size_t j = 0; j < dp.summ.size(); ++j) {
            const auto& s = dp.summ[j];
            os << "page " << r << " | " << d.s << " " << d.f << " " << d.w << " | " << order_str(s.order) << " | "
               << s.label << " | d_" << r << " -> (";
            if (m && m->rows()) {
                const DegPage* tp = at(r, d + sh);
                bool first = true;
                for (std::size_t i = 0; i < m->rows(); ++i) {
                    Int c = reduce_mod((*m)(i, j), tp->summ[i].order);
                    if (c == 0) continue;
                    if (!first) os << " + ";
                    first = false;
                    if (c != 1) os << c << "*";
                    os << tp->summ[i].label;
                }
            }
            os << ")\n";
        }
    }
    return os.str();
}

std::string SpectralSequence::dump_einf(const Window& w) const {
    std::ostringstream os;
    for (const auto& [d, dp] : einf().deg) {
        if (!w.contains(d) || !inner_.contains(d)) continue;
        for (const auto& s : dp.summ)
            os << "page inf | " << d.s << " " << d.f << " " << d.w << " | " << order_str(s.order) << " | " << s.label
               << " | d_inf -> ()\n";
    }
    return os.str();
}

std::size_t SpectralSequence::differential_count(int r, const Window& w) const {
    std::size_t n = 0;
    for (const auto& [d, M] : page(r).diff) {
        if (!w.contains(d) || M.rows() == 0) continue;
        for (std::size_t j = 0; j < M.cols(); ++j) {
            bool nz = false;
            for (std::size_t i = 0; i < M.rows(); ++i)
                if (M(i, j) != 0) nz = true;
            if (nz) ++n;
        }
    }
    return n;
}
// ---------------------------------------------------------------------------

LadderRule::LadderRule(std::string v, std::string rho, std::string iota, std::string tau, int from)
    : v_(std::move(v)), rho_(std::move(rho)), iota_(std::move(iota)), tau_(std::move(tau)), from_(from) {}

std::optional<std::vector<Int>> LadderRule::value(const SpectralSequence& ss, int r, const TriDegree& d,
                                                  std::size_t idx) {
    int n = r - 1;
    if (n < from_) return std::nullopt;
    const auto& p = ss.complex().ring();
    std::size_t vi = p.index(v_), ri = p.index(rho_), ii = p.index(iota_), ti = p.index(tau_);
    const auto& x = ss.at(r, d)->summ[idx];
    Element lift = ss.to_element(d, x.lift);
    Element val;
    const int step = 1 << (n - 1);
    for (const auto& [m, c] : lift) {
        if (m[ti] > 0 || m[ii] > 0) continue;
        if (m[vi] % step != 0) {
            errors.push_back("ladder: " + p.ascii(m) + " is not a cycle on page " + std::to_string(r));
            continue;
        }
        if ((m[vi] / step) % 2 == 0) continue;
        Monomial t = m;
        t[ri] += n + 1;
        t[ii] += 1;
        add_term(val, t, c);
    }
    val = ss.complex().normalize(val);
    if (val.empty()) return std::nullopt;
    TriDegree t = d + ss.complex().shift(r);
    auto col = ss.coords(r, t, val);
    if (!col) {
        errors.push_back("ladder value is not a class at " + t.str());
        return std::nullopt;
    }
    return col;
}

CoweightRule::CoweightRule(const nlohmann::json& cfg) {
    tau_ = cfg.value("tau", "tau2");
    for (const auto& g : cfg.value("free", nlohmann::json::array())) free_.insert(g.get<std::string>());
}

int CoweightRule::page_for(int c) {
    if (c <= 0 || c % 4 != 0) return 0;
    int v = 0;
    while (c % 2 == 0) {
        c /= 2;
        ++v;
    }
    return v + 1;
}

bool CoweightRule::excluded(const SpectralSequence& ss, const TriDegree& d, const Summand& x) const {
    Element e = ss.to_element(d, x.lift);
    if (e.size() != 1) return false;
    const auto& [m, c] = *e.begin();
    const auto& p = ss.complex().ring();
    if (mono_is_one(m)) return true;
    std::size_t ti = p.index(tau_);
    bool only_tau = true, only_free = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (i != ti) only_tau = false;
        if (!free_.count(p.generators()[i].name)) only_free = false;
    }
    // tau_ is tau^2, so tau^{4k} has even exponent
    if (only_tau && m[ti] % 2 == 0 && c % 2 == 0) return true;
    return only_free;
}

bool CoweightRule::may_fire(const SpectralSequence& ss, int r, const TriDegree& d) const {
    return page_for(ss.complex().coweight(d)) == r;
}

std::optional<std::vector<Int>> CoweightRule::value(const SpectralSequence& ss, int r, const TriDegree& d,
                                                    std::size_t idx) {
    int c = ss.complex().coweight(d);
    if (page_for(c) != r) return std::nullopt;
    const auto& x = ss.at(r, d)->summ[idx];
    if (x.iota || excluded(ss, d, x)) return std::nullopt;
    TriDegree t = d + ss.complex().shift(r);
    const DegPage* tp = ss.at(r, t);
    std::size_t nonzero = 0;
    if (tp)
        for (const auto& s : tp->summ) nonzero += s.order == 2 ? 1 : 2;
    if (!tp || tp->summ.size() != 1 || tp->summ[0].order != 2) {
        if (ss.inner().contains(d))
            errors.push_back("d_" + std::to_string(r) + " on " + x.label + " at " + d.str() + ": " +
                             (nonzero == 0 ? "no nonzero target" : "ambiguous target"));
        return std::nullopt;
    }
    if (ss.inner().contains(d)) ++assigned;
    return std::vector<Int>{1};
}

void CoweightRule::after_page(const SpectralSequence& ss, int r) {
    if (r < 2) return;
    const Page& next = ss.page(r + 1);
    for (const auto& [d, dp] : next.deg) {
        if (!ss.inner().contains(d)) continue;
        if (page_for(ss.complex().coweight(d)) != r) continue;
        for (const auto& s : dp.summ)
            if (!s.iota && !excluded(ss, d, s))
                errors.push_back("class " + s.label + " at " + d.str() + " survives page " + std::to_string(r));
    }
}

std::shared_ptr<HigherRule> make_rule(const E1Complex& cx) {
    const auto& raw = cx.ring().raw();
    if (!raw.contains("higher")) return nullptr;
    const auto& h = raw["higher"];
    auto kind = h.at("kind").get<std::string>();
    if (kind == "ladder")
        return std::make_shared<LadderRule>(h.at("v").get<std::string>(), h.at("rho").get<std::string>(),
                                            h.at("iota").get<std::string>(), h.at("tau").get<std::string>(),
                                            h.value("from", 2));
    if (kind == "coweight_rule") return std::make_shared<CoweightRule>(h);
    throw PresentationError("unknown higher differential kind " + kind);
}

}  // namespace artifact
