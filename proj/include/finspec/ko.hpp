#pragma once

#include <optional>
#include <string>

namespace finspec {

/// Signs (ε, ε′, ε″) of a real structure together with the KO-dimension they
/// determine. ε″ is absent in odd KO-dimension.
struct KOSignature {
    int n = 0;
    int eps = 1;
    int eps_prime = 1;
    std::optional<int> eps_double_prime = 1;

    /// Row n (mod 8) of the sign table.
    static KOSignature from_dimension(int n);

    bool even() const { return eps_double_prime.has_value(); }

    friend bool operator==(const KOSignature&, const KOSignature&) = default;
};

/// Inverse lookup in the sign table. Returns nullopt when the signs do not
/// form a row of the table (e.g. ε′ = −1 together with a grading).
std::optional<int> ko_dimension_from_signs(int eps, int eps_prime, std::optional<int> eps_double_prime);

std::string to_string(const KOSignature& ko);

}  // namespace finspec
