#pragma once

#include "lr/mesh.hpp"

#include <string>
#include <vector>

namespace lr {

struct ScenarioInfo {
    std::string name;
    std::string summary;
};

/// Names of all bundled meshes (topology-faithful reconstructions of the worked
/// examples, with fixed rational coordinates).
std::vector<ScenarioInfo> scenarioList();

/// Builds a bundled mesh by name; throws UnknownScenario otherwise.
LRMesh builtinScenario(const std::string& name);

}  // namespace lr
