#include "gpabm/config.hpp"

#include <stdexcept>

#include "gpabm/landscape.hpp"

namespace gpabm {

std::string to_string(MutationMode m) {
    return m == MutationMode::PerProgram ? "per_program" : "per_instruction";
}

void SimConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(compute_capacity >= 1, "compute_capacity must be >= 1");
    require(infertility >= 1.0, "infertility must be >= 1");
    require(birth_cost >= 0.0, "birth_cost must be >= 0");
    require(puberty >= 0, "puberty must be >= 0");
    require(metabolism > 0.0, "metabolism must be > 0");
    require(mu >= 1.0, "mu must be >= 1");
    require(initial_population >= 0, "initial_population must be >= 0");
    require(initial_endowment >= 0.0, "initial_endowment must be >= 0");
    require(max_steps >= 0, "max_steps must be >= 0");
    require(width >= 1 && height >= 1, "width and height must be >= 1");
    require(capacity >= 0.0, "capacity must be >= 0");
    require(regrowth >= 0.0, "regrowth must be >= 0");
    require(vision >= 1 && vision <= Landscape::kMaxVision, "vision must be in 1..9");
    require(static_cast<long long>(initial_population) <= static_cast<long long>(width) * height,
            "initial_population exceeds cell count");
}

}  // namespace gpabm
