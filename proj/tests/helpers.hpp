#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "ncl/infomeasures.hpp"
#include "ncl/model.hpp"

namespace helpers {

inline ncl::Alphabet bits() { return ncl::Alphabet({"0", "1"}); }
inline ncl::Alphabet pairs() { return ncl::Alphabet({"00", "01", "10", "11"}); }

inline ncl::DetFunction identity_fn(const ncl::Alphabet& a) {
    std::vector<int> table(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) table[static_cast<std::size_t>(i)] = i;
    return ncl::DetFunction(a, a, table);
}

// AND of the two bits encoded in the pair label
inline ncl::DetFunction and_fn() { return ncl::DetFunction(pairs(), bits(), {0, 0, 0, 1}); }

inline ncl::Pmf uniform(const ncl::Alphabet& a) {
    return ncl::Pmf(a, std::vector<double>(static_cast<std::size_t>(a.size()),
                                           1.0 / static_cast<double>(a.size())));
}

inline ncl::NoisyComputationInstance identity_bsc(double p) {
    return ncl::NoisyComputationInstance(uniform(bits()), identity_fn(bits()), ncl::bsc(p));
}

// AND followed by a binary symmetric channel on the result
inline ncl::NoisyComputationInstance and_bsc(double p) {
    return ncl::NoisyComputationInstance(uniform(pairs()), and_fn(),
                                         ncl::compose(ncl::fn_as_channel(and_fn()), ncl::bsc(p)));
}

inline ncl::NoisyComputationInstance and_uniform_noise() {
    return ncl::NoisyComputationInstance(
        uniform(pairs()), and_fn(),
        ncl::DMChannel(pairs(), bits(),
                       {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}));
}

inline double h2(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

// Location of the shipped instance files, provided by the build.
inline std::string instance_dir() {
#ifdef NCL_INSTANCE_DIR
    return NCL_INSTANCE_DIR;
#else
    return "instances";
#endif
}

} // namespace helpers
