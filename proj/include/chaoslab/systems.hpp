#pragma once

// Concrete systems shipped with the library.

#include <string_view>

#include "chaoslab/system.hpp"

namespace chaoslab {

/// Full N-shift on bi-infinite sequences, generator g = shift by one.
/// Declared sensitivity (expansivity) constant 1/2.
SystemHandle shift_system(int alphabet_size);

/// Torus automorphism of an Anosov matrix, max-norm torus metric.
SystemHandle anosov_system(const AnosovMatrix& matrix);

/// Linked twist map h o f on R, identity elsewhere on the torus. Probe
/// centers are drawn from R.
SystemHandle linked_twist_system(long k, long m);

/// The induced map on the disk p(R) of the pillow.
SystemHandle disk_system(long k, long m);

/// Translations by the basis vectors of Q^n plus scaling by lambda > 1,
/// Euclidean metric with certified square roots.
SystemHandle affine_example_system(int n, const Rat& lambda);

/// Translations only: a group of isometries of Q^n.
SystemHandle translation_system(int n);

/// Trivial action on the points and metric of `inner`.
SystemHandle identity_system(SystemHandle inner);

/// Builds a system from its spec string, e.g. "shift(2)", "anosov(3,3)",
/// "anosov(2,1,1,1)", "linked_twist(3,3)", "disk(3,3)", "affine(2,2)",
/// "translation(1)", "identity(shift(2))", "product(shift(2),shift(3))",
/// "cycle(anosov(3,3),anosov(3,4))" (countable periodic product).
SystemHandle make_system(std::string_view spec);

}  // namespace chaoslab
