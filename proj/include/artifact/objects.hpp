#pragma once

#include "artifact/eta_local.hpp"
#include "artifact/fiber_les.hpp"

#include <memory>
#include <string>
#include <vector>

namespace artifact {

std::string data_dir();
const std::vector<std::string>& object_names();

RingPresentation load_presentation(const std::string& name);
std::unique_ptr<E1Complex> make_complex(const std::string& name);

Window default_window(const std::string& name);
int default_pages(const std::string& name);

// a complex with its spectral sequence; the sequence keeps a reference to the complex
struct ObjectRun {
    std::unique_ptr<E1Complex> cx;
    std::shared_ptr<HigherRule> rule;
    std::unique_ptr<SpectralSequence> ss;

    const SpectralSequence& operator*() const { return *ss; }
    const SpectralSequence* operator->() const { return ss.get(); }
};

ObjectRun run_object(const std::string& name, const Window& inner, int r_max);
ObjectRun run_object(const std::string& name);

}  // namespace artifact
