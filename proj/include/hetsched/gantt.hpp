#pragma once

#include <string>
#include <vector>

#include "hetsched/model.hpp"
#include "hetsched/schedule.hpp"

namespace hetsched {

// Deterministic Gantt rendering: one lane per processor, segment color is a
// fixed hash of the job label, speed printed when the box is wide enough.
std::string gantt_svg(const Schedule& s, const std::vector<JobInstance>& jobs,
                      const Platform& platform);

}  // namespace hetsched
