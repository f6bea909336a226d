#pragma once

#include "artifact/homotopy.hpp"

namespace artifact {

struct ChartSpec {
    std::string object;
    int page = 0;  // 0 = E_infinity
    int residue = 0, modulus = 1;  // coweight class; the modulus is also the tau period
    int stem_lo = 0, stem_hi = 24;
    int f_cap = 16;
    bool differentials = true, hidden = true, products = true;

    void validate() const;
};

struct ChartLine {
    std::string kind;  // h1, rho, d<r>, hidden-h, hidden-rho, hidden-eta
    int s = 0, f = 0, k = 0;  // target position and index among the data there
    bool dashed = false;
    bool arrow = false;  // target beyond the chart; s, f, k unused

    auto operator<=>(const ChartLine&) const = default;
};

struct ChartDatum {
    int s = 0, f = 0;
    std::string glyph;  // circle, box, box:n
    std::string color;  // green, black, red
    std::string label;
    std::vector<ChartLine> lines;

    auto operator<=>(const ChartDatum&) const = default;
};

// one datum per generator of E_r modulo tau^modulus in the residue class
std::vector<ChartDatum> chart_data(const SpectralSequence& ss, const ChartSpec& spec,
                                   const std::vector<HiddenExtension>& ext);

std::string emit_svg(const std::vector<ChartDatum>& data, const ChartSpec& spec);

// tab-separated sidecar: s, f, glyph, color, label, lines
std::string write_sidecar(const std::vector<ChartDatum>& data, const ChartSpec& spec);
std::vector<ChartDatum> parse_sidecar(const std::string& text);

struct RenderedChart {
    std::vector<ChartDatum> data;
    std::string svg, sidecar;
    std::vector<std::string> ledger_errors;
};

// runs the object's sequence over its default window widened to the chart
RenderedChart render_chart(const ChartSpec& spec);
// <object>-<page>-<residue>mod<modulus>
std::string chart_basename(const ChartSpec& spec);

}  // namespace artifact
