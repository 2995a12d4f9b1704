#include "deblur/parallel.hpp"

#include <cstdlib>
#include <string>

namespace deblur {

int worker_count() {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* env = std::getenv("DEBLUR_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) workers = std::min(workers, cap);
        } catch (const std::exception&) {
            // Malformed values leave the hardware default in place.
        }
    }
    return workers;
}

}  // namespace deblur
