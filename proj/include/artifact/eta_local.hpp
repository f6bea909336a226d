#pragma once

#include "artifact/ss_engine.hpp"

namespace artifact {

// Generator-wise substitution along the "etaImage" table of src; h1 goes to 1.
class Localization {
public:
    Localization(const RingPresentation& src, const RingPresentation& tgt);

    Element operator()(const Element& e) const;
    Element operator()(const Monomial& m) const;
    TriDegree degree(const TriDegree& d) const { return tgt_.grade_of_tri(d); }

    const RingPresentation& source() const { return src_; }
    const RingPresentation& target() const { return tgt_; }

private:
    const RingPresentation& src_;
    const RingPresentation& tgt_;
    std::vector<Element> images_;
};

struct CompareReport {
    std::size_t checked = 0;
    std::size_t nonzero = 0;  // summands whose differential is nonzero on either side
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// localize(d_r x) == d_r localize(x) for every summand x of ss over its inner window
CompareReport compare(const SpectralSequence& ss, const SpectralSequence& eta, const Localization& loc, int r_max);

// the eta window needed to compare against a tri-graded window
Window eta_window(const Localization& loc, const Window& w);

}  // namespace artifact
