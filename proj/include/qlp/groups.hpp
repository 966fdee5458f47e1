#pragma once

#include <string>
#include <vector>

namespace qlp {

/// Multiplication table of a finite group: table[a][b] is the index of ab.
using CayleyTable = std::vector<std::vector<int>>;

/// Throws ValidationError naming the failing axiom ("associativity fails at
/// (i,j,k)", ...). Checks closure, identity, inverses and associativity.
void validate_group_table(const CayleyTable& table, int identity);

/// ℤ_n with elements 0, …, n−1 and identity 0.
CayleyTable cyclic_group(int n);

/// S_n acting on {0, …, n−1}; permutations listed in lexicographic order of
/// their one-line notation, so index 0 is the identity. Product is
/// composition (στ)(x) = σ(τ(x)).
CayleyTable symmetric_group(int n);

/// Direct product G × H; (g, h) has index g·|H| + h.
CayleyTable direct_product(const CayleyTable& g, const CayleyTable& h);

std::vector<int> group_inverses(const CayleyTable& table, int identity);

/// Subgroup generated by `generators` (closure under products; finite, so
/// inverses come for free). Returned sorted.
std::vector<int> generated_subgroup(const CayleyTable& table, int identity,
                                    const std::vector<int>& generators);

}  // namespace qlp
