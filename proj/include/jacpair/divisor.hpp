#ifndef JACPAIR_DIVISOR_HPP
#define JACPAIR_DIVISOR_HPP

#include "jacpair/graph.hpp"
#include "jacpair/ints.hpp"

#include <string>
#include <vector>

namespace jacpair {

/// Chip configuration: one integer per vertex.
using Divisor = std::vector<Int>;
/// Integer potential, defined up to an additive constant.
using PotentialFunction = std::vector<Int>;

Int degree(const Divisor& d);

/// div(f) = L f, the principal divisor of the potential f.
Divisor div_of(const Multigraph& g, const PotentialFunction& f);

/// The unique base-reduced divisor equivalent to d.
Divisor dhar_reduce(const Multigraph& g, const Divisor& d, std::size_t base);

/// Burning test: d satisfies the two base-reduced conditions verbatim.
bool is_reduced(const Multigraph& g, const Divisor& d, std::size_t base);

bool is_equivalent(const Multigraph& g, const Divisor& d1, const Divisor& d2);

/// Least m >= 1 with m*d principal (d of degree zero).
Int class_order(const Multigraph& g, const Divisor& d);

/// Text form "index:value,index:value"; unspecified vertices are zero.
Divisor parse_divisor(const std::string& text, std::size_t vertex_count);
std::string emit_divisor(const Divisor& d);

} // namespace jacpair

#endif
