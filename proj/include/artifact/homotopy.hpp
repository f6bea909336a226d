#pragma once

#include "artifact/ss_engine.hpp"

#include <set>

namespace artifact {

struct LedgerRow {
    std::string object;
    int coweight = 0;
    std::string source, kind, target;  // kind is rho, h or eta
    TriDegree listed;
    std::string degree_of;  // which endpoint the listed degree refers to
    std::string proof;
    std::set<std::string> flags;
    int line = 0;

    bool has(const std::string& f) const { return flags.count(f) != 0; }
};

std::vector<LedgerRow> load_ledger(const std::string& path);
// rows for an object from the data directory; empty when it has no ledger
std::vector<LedgerRow> ledger_for(const std::string& object);

TriDegree kind_degree(const std::string& kind);
std::string kind_symbol(const std::string& kind);

// degree arithmetic of one row: parsed endpoints, listed degree, kind shift, filtration jump
std::vector<std::string> check_row(const LedgerRow& row, const E1Complex& cx);

struct HiddenExtension {
    const LedgerRow* row = nullptr;
    int tau_k = 0, v_k = 0;  // tau^4 and v1^4 exponents of the expansion
    std::string kind;
    TriDegree source_deg, target_deg;
    Element source, target;
    std::vector<Int> source_coords, target_coords;  // E_infinity coordinates
    std::string source_label, target_label;
};

struct Expansion {
    std::vector<HiddenExtension> ext;
    std::vector<std::string> errors;
    std::vector<std::string> skipped;  // endpoints outside the window or in a truncated column
    std::size_t checked = 0;
};

// replicate rows along tau^4 and v1^4 inside the window; every endpoint must be a
// nonzero E_infinity class
Expansion expand_ledger(const std::vector<LedgerRow>& rows, const SpectralSequence& ss, const Window& w);

struct ColumnClass {
    TriDegree d;
    std::size_t idx;
    Int order;
    std::string label;
};

struct HomotopyGroup {
    std::string object;
    int s = 0, w = 0;
    std::vector<ColumnClass> classes;  // E_infinity summands ordered by filtration
    FGAbGroup group;
    std::vector<std::string> actions;
    std::vector<std::string> errors;
    bool truncated = false;
    std::string provenance;

    // largest finite cyclic order, 1 if none
    Int exponent() const;
    std::string headline() const;
};

// pi_{s,w} from the E_infinity column plus hidden extensions; f_cap bounds the column scan
HomotopyGroup assemble(const SpectralSequence& ss, int s, int w, const std::vector<HiddenExtension>& ext, int f_cap);

struct PatternRow {
    int coweight, stem;
    bool generic;
    Int expected, found;
    std::string group;
};

struct PatternReport {
    std::vector<PatternRow> rows;
    std::vector<std::string> failures;
};

// coweight 4j - 1: generic stems (not 3 mod 4) should have cyclic order 2^{v(j)+3}
PatternReport order_pattern_check(const SpectralSequence& ss, const std::vector<HiddenExtension>& ext, int j,
                                  int stem_lo, int stem_hi, int f_cap);

}  // namespace artifact
