#include "artifact/eta_local.hpp"

#include <algorithm>

namespace artifact {

Localization::Localization(const RingPresentation& src, const RingPresentation& tgt) : src_(src), tgt_(tgt) {
    if (!src_.raw().contains("etaImage")) throw PresentationError(src_.name() + " has no etaImage table");
    const auto& table = src_.raw()["etaImage"];
    for (const auto& g : src_.generators()) {
        if (!table.contains(g.name)) throw PresentationError(src_.name() + ": no etaImage for " + g.name);
        Element img = tgt_.from_poly(tgt_.parse_poly_json(table[g.name]));
        for (const auto& [m, c] : img)
            if (tgt_.grade_of(m) != tgt_.grade_of_tri(g.degree))
                throw PresentationError(src_.name() + ": etaImage of " + g.name + " has the wrong degree");
        images_.push_back(std::move(img));
    }
}

Element Localization::operator()(const Monomial& m) const {
    Element out = tgt_.monomial_element(tgt_.one());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) out = tgt_.multiply(out, images_[i]);
    return out;
}

Element Localization::operator()(const Element& e) const {
    Element out;
    for (const auto& [m, c] : e) out = add(out, scale((*this)(m), c));
    return tgt_.normal_form(out);
}

Window eta_window(const Localization& loc, const Window& w) {
    TriDegree lo{1 << 20, 1 << 20, 0}, hi{-(1 << 20), -(1 << 20), 0};
    for (int s : {w.lo.s, w.hi.s})
        for (int f : {w.lo.f, w.hi.f})
            for (int wt : {w.lo.w, w.hi.w}) {
                TriDegree e = loc.degree({s, f, wt});
                lo.s = std::min(lo.s, e.s);
                lo.f = std::min(lo.f, e.f);
                hi.s = std::max(hi.s, e.s);
                hi.f = std::max(hi.f, e.f);
            }
    return {lo, hi};
}

CompareReport compare(const SpectralSequence& ss, const SpectralSequence& eta, const Localization& loc, int r_max) {
    CompareReport rep;
    const int last = std::min({r_max, ss.r_max(), eta.r_max()});
    for (int r = 1; r <= last; ++r) {
        const Page& pg = ss.page(r);
        const TriDegree sh = ss.complex().shift(r);
        for (const auto& [d, dp] : pg.deg) {
            if (!ss.inner().contains(d)) continue;
            const TriDegree ed = loc.degree(d), et = loc.degree(d + sh);
            if (!eta.inner().contains(ed)) {
                rep.mismatches.push_back("eta window misses " + ed.str());
                continue;
            }
            const IntMatrix& de = eta.diff(r, ed);
            const DegPage* etp = eta.at(r, et);
            for (std::size_t j = 0; j < dp.summ.size(); ++j) {
                ++rep.checked;
                const auto& x = dp.summ[j];
                std::string where = "page " + std::to_string(r) + " " + x.label + " at " + d.str();
                auto cx = eta.coords(r, ed, loc(ss.to_element(d, x.lift)));
                if (!cx) {
                    rep.mismatches.push_back(where + ": image is not an eta E_r class");
                    continue;
                }
                std::vector<Int> right(etp ? etp->summ.size() : 0);
                if (de.rows())
                    for (std::size_t i = 0; i < right.size(); ++i)
                        for (std::size_t k = 0; k < cx->size(); ++k) right[i] += de(i, k) * (*cx)[k];
                std::optional<std::vector<Int>> left = std::vector<Int>(right.size());
                Element dx = ss.differential_element(r, d, j);
                if (!dx.empty()) left = eta.coords(r, et, loc(dx));
                if (!left) {
                    rep.mismatches.push_back(where + ": image of d_r is not an eta E_r class");
                    continue;
                }
                bool nz = false, same = true;
                for (std::size_t i = 0; i < right.size(); ++i) {
                    Int o = etp->summ[i].order;
                    Int a = reduce_mod((*left)[i], o), b = reduce_mod(right[i], o);
                    if (a != 0 || b != 0) nz = true;
                    if (a != b) same = false;
                }
                if (nz) ++rep.nonzero;
                if (!same) {
                    std::string lhs = eta.complex().label(eta.lift_element(r, et, *left));
                    std::string rhs = eta.complex().label(eta.lift_element(r, et, right));
                    rep.mismatches.push_back(where + ": loc(d x) = " + lhs + " but d loc(x) = " + rhs);
                }
            }
        }
    }
    return rep;
}

}  // namespace artifact
