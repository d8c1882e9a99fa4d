#pragma once

#include "lr/mesh.hpp"

#include <string>
#include <string_view>

namespace lr {

/// Parses an lrspec/1 document. Grammar (one directive per line, '#' comments):
///
///   lrspec/1
///   degree <p1> <p2>
///   xknots <pos>:<mult> ...
///   yknots <pos>:<mult> ...
///   insert <v|h> <fixed> <from> <to> [mult]
///
/// Rationals are written "a/b" or "a". The mesh is rebuilt by replaying the
/// insertions in order. Parse failures carry line/column; semantic failures
/// (dangling split, multiplicity overflow, ...) name the insertion index.
LRMesh parseMeshSpec(std::string_view text);

/// Canonical serialization; parse(serialize(m)) reproduces m exactly.
std::string serializeMeshSpec(const LRMesh& mesh);

}  // namespace lr
