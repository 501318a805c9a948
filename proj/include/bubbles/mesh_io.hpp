#ifndef BUBBLES_MESH_IO_HPP
#define BUBBLES_MESH_IO_HPP

#include <iosfwd>
#include <string>

#include "bubbles/mesh.hpp"

namespace bubbles {

// OFF with two extra integer fields per face (the region pair). This is the
// authoritative format: write -> read -> write is byte-identical.
void writeOff(std::ostream& os, const LabeledMesh& mesh);
void writeOff(const std::string& path, const LabeledMesh& mesh);
LabeledMesh readOff(std::istream& is);
LabeledMesh readOff(const std::string& path);

// OBJ export for viewers; labels become `g i_j` groups. Lossy (no junction
// annotations), import not provided.
void writeObj(std::ostream& os, const LabeledMesh& mesh);
void writeObj(const std::string& path, const LabeledMesh& mesh);

}  // namespace bubbles

#endif
