#include "finspec/ko.hpp"

#include <array>
#include <sstream>

namespace finspec {

namespace {

struct Row {
    int eps;
    int eps_prime;
    int eps_double_prime;  // 0 for odd rows
};

constexpr std::array<Row, 8> kSignTable{{
    {1, 1, 1},
    {1, -1, 0},
    {-1, 1, -1},
    {-1, 1, 0},
    {-1, 1, 1},
    {-1, -1, 0},
    {1, 1, -1},
    {1, 1, 0},
}};

}  // namespace

KOSignature KOSignature::from_dimension(int n) {
    const int m = ((n % 8) + 8) % 8;
    const Row& r = kSignTable[static_cast<std::size_t>(m)];
    KOSignature ko;
    ko.n = m;
    ko.eps = r.eps;
    ko.eps_prime = r.eps_prime;
    if (r.eps_double_prime != 0) {
        ko.eps_double_prime = r.eps_double_prime;
    } else {
        ko.eps_double_prime.reset();
    }
    return ko;
}

std::optional<int> ko_dimension_from_signs(int eps, int eps_prime, std::optional<int> eps_double_prime) {
    for (int n = 0; n < 8; ++n) {
        const Row& r = kSignTable[static_cast<std::size_t>(n)];
        const bool row_even = r.eps_double_prime != 0;
        if (row_even != eps_double_prime.has_value()) continue;
        if (r.eps != eps || r.eps_prime != eps_prime) continue;
        if (row_even && r.eps_double_prime != *eps_double_prime) continue;
        return n;
    }
    return std::nullopt;
}

std::string to_string(const KOSignature& ko) {
    std::ostringstream os;
    os << "KO " << ko.n << " (eps=" << ko.eps << ", eps'=" << ko.eps_prime;
    if (ko.eps_double_prime) os << ", eps''=" << *ko.eps_double_prime;
    os << ")";
    return os.str();
}

}  // namespace finspec
