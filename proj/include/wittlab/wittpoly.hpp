#pragma once

#include <string>
#include <vector>

#include "wittlab/intpoly.hpp"

namespace wittlab {

enum class WittKind { sum, product, negation };

std::string kind_name(WittKind k);
WittKind kind_from_name(const std::string& name);

/// Largest Witt length generated for each prime; symbolic cost explodes
/// beyond this. Exceeding it is a configuration error, not a crash.
int witt_budget(int p);
void require_witt_budget(int p, int n);

/// Ghost component w_i = sum_{j<=i} p^j V_j^{p^(i-j)} over the variable
/// block starting at `offset` inside a polynomial of the given arity.
IntPolynomial ghost_polynomial(int p, int i, size_t arity, size_t offset);

/// The universal structure polynomials for length-n Witt vectors: level i
/// has arity 2(i+1) (variables X_0..X_i then Y_0..Y_i) for sum/product and
/// arity i+1 for negation. Every division in the ghost recursion is checked
/// exact and the ghost identities are verified symbolically before return.
std::vector<IntPolynomial> witt_structure_polynomials(int p, int n, WittKind kind);

/// Re-check the defining ghost identities of previously generated
/// polynomials (used after cache load and by the failure-injection test).
void verify_ghost_identities(int p, WittKind kind, const std::vector<IntPolynomial>& polys);

/// G(X_1..X_p) = ((sum X_i)^p - sum X_i^p)/p, built termwise from exact
/// multinomials divided by p; the defining identity is verified symbolically
/// before return. Supported for p <= 7.
IntPolynomial g_polynomial(int p);

/// Persistent cache: one JSON file per (p, n, kind) under dir. store()
/// requires verified polynomials; load() checks metadata and a content
/// checksum, and re-verifies the ghost identities when paranoid is set.
std::string cache_file_name(int p, int n, WittKind kind);
void cache_store(const std::string& dir, int p, int n, WittKind kind,
                 const std::vector<IntPolynomial>& polys);
std::vector<IntPolynomial> cache_load(const std::string& dir, int p, int n, WittKind kind,
                                      bool paranoid = false);
bool cache_has(const std::string& dir, int p, int n, WittKind kind);

}  // namespace wittlab
