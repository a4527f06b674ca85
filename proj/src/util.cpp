#include "gasinar/util.hpp"

namespace gasinar {

namespace {

std::vector<double> build_lgamma_table() {
    // lgamma(n) for n in [1, 2^16); covers every count this project meets.
    std::vector<double> table(1u << 16);
    table[0] = 0.0;  // unused slot, lgamma(0) is infinite
    for (std::size_t n = 1; n < table.size(); ++n) {
        table[n] = std::lgamma(static_cast<double>(n));
    }
    return table;
}

}  // namespace

double lgamma_int(std::uint64_t n) {
    static const std::vector<double> table = build_lgamma_table();
    if (n < table.size()) return table[n];
    return std::lgamma(static_cast<double>(n));
}

}  // namespace gasinar
