#pragma once

#include <string>

#include "pisr/milp.hpp"

namespace pisr {

enum class ModelFormat { Lp, Mps };

// Deterministic text emission. Bounds, integrality sections and MPS columns
// are ordered by variable name so that write(parse(write(m))) == write(m).
// Names beyond the format limit (255 for LP, 8 for MPS) are shortened
// deterministically; FormatError(NameTooLong) only on a shortening collision.
std::string write_model(const MilpModel& model, ModelFormat format);

// Inverse of write_model on its image; also accepts the documented dialect
// subset (docs/formats.md). Throws FormatError with line information.
MilpModel parse_model(const std::string& text, ModelFormat format);

}  // namespace pisr
