#pragma once

#include <random>
#include <string>

namespace testgen {

// Random smooth expressions over u and v.  Denominators and fractional
// powers are kept positive so central differences are meaningful.
inline std::string random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> num(0.5, 2.0);
    const int k = pick(rng);
    auto sub = [&] { return random_expr(rng, depth - 1); };
    switch (k) {
        case 0: return "u";
        case 1: return "v";
        case 2: return std::to_string(num(rng));
        case 3: return "(" + sub() + "+" + sub() + ")";
        case 4: return "(" + sub() + "-" + sub() + ")";
        case 5: return "(" + sub() + "*" + sub() + ")";
        case 6: return "(" + sub() + "/(1.5+(" + sub() + ")^2))";
        case 7: return "(" + sub() + ")^2";
        case 8: return "-(" + sub() + ")";
        default: return "(1.2+(" + sub() + ")^2)^0.5";
    }
}


}  // namespace testgen
