#include "artifact/objects.hpp"

#include <algorithm>
#include <cstdlib>

#ifndef ARTIFACT_DATA_DIR
#define ARTIFACT_DATA_DIR "data"
#endif

namespace artifact {

std::string data_dir() {
    if (const char* env = std::getenv("ARTIFACT_DATA")) return env;
    return ARTIFACT_DATA_DIR;
}

const std::vector<std::string>& object_names() {
    static const std::vector<std::string> names{"ko_C", "L_C", "ko", "L", "ko_eta", "L_eta"};
    return names;
}

RingPresentation load_presentation(const std::string& name) {
    if (std::find(object_names().begin(), object_names().end(), name) == object_names().end())
        throw PresentationError("unknown object " + name);
    return RingPresentation::load(data_dir() + "/presentations/" + name + ".json");
}

std::unique_ptr<E1Complex> make_complex(const std::string& name) {
    RingPresentation p = load_presentation(name);
    if (p.raw().contains("fiber")) {
        auto base = load_presentation(p.raw()["fiber"].at("base").get<std::string>());
        return std::make_unique<FiberComplex>(std::move(base), std::move(p));
    }
    return std::make_unique<RingComplex>(std::move(p));
}

Window default_window(const std::string& name) {
    if (name == "ko_eta" || name == "L_eta") return {{-2, -48, 0}, {60, 48, 0}};
    return {{-4, 0, -12}, {48, 24, 48}};
}

int default_pages(const std::string& name) {
    if (name == "L" || name == "L_eta") return 7;
    return 2;
}

ObjectRun run_object(const std::string& name, const Window& inner, int r_max) {
    ObjectRun run;
    run.cx = make_complex(name);
    run.rule = make_rule(*run.cx);
    run.ss = std::make_unique<SpectralSequence>(*run.cx, inner, r_max, run.rule);
    run.ss->run();
    return run;
}

ObjectRun run_object(const std::string& name) { return run_object(name, default_window(name), default_pages(name)); }

}  // namespace artifact
