#include "hforge/hierarchy.hpp"

#include <algorithm>

namespace hforge {

std::vector<int> truncate_guarantee(Producer producer, int depth, int order, int supply,
                                    int free_level) {
    if (depth < 1 || order < 1) throw Error("truncate_guarantee: depth and order must be >= 1");
    std::vector<int> out(depth);
    switch (producer) {
        case Producer::Flow:
        case Producer::NonlinearSeries:
            for (int n = 1; n <= depth; ++n) out[n - 1] = std::min(order, supply - n);
            break;
        case Producer::FreeLevel:
            for (int n = 1; n <= depth; ++n) {
                if (n >= free_level)
                    out[n - 1] = std::min(order, supply - (n - free_level));
                else
                    out[n - 1] = std::min(order, supply + (free_level - n));
            }
            break;
    }
    return out;
}

}  // namespace hforge
