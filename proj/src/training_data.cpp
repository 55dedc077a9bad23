#include "spamnet/training_data.hpp"

#include <cmath>
#include <string>

#include "spamnet/errors.hpp"

namespace spamnet {

void TrainingSet::validate(const Network& net) const {
    if (patterns.empty()) throw ShapeError("training set is empty");
    const std::size_t n_in = net.input_size();
    const std::size_t n_out = net.output_size();
    const double lo = net.activation().range_min();
    const double hi = net.activation().range_max();
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        const Pattern& pat = patterns[p];
        if (pat.input.size() != n_in || pat.target.size() != n_out) {
            throw ShapeError("pattern " + std::to_string(p) + ": dimensions (" +
                             std::to_string(pat.input.size()) + "," +
                             std::to_string(pat.target.size()) + ") do not match network (" +
                             std::to_string(n_in) + "," + std::to_string(n_out) + ")");
        }
        for (double v : pat.input) {
            if (!std::isfinite(v)) throw ShapeError("pattern " + std::to_string(p) + ": non-finite input");
        }
        for (double t : pat.target) {
            if (!std::isfinite(t) || t < lo || t > hi) {
                throw ShapeError("pattern " + std::to_string(p) +
                                 ": target outside activation range [" + std::to_string(lo) + "," +
                                 std::to_string(hi) + "]");
            }
        }
    }
}

} // namespace spamnet
