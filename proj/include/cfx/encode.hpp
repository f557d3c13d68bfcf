#pragma once

#include "cfx/cnf.hpp"
#include "cfx/obdd.hpp"

namespace cfx {

/// Off-set clausal encoding of an OBDD: one clause per root-to-0-sink path,
/// the negation of the path's bindings. Binding (i, 1) contributes literal
/// -(i+1), binding (i, 0) contributes +(i+1); variables absent from a path
/// are absent from its clause, and no auxiliary variables are introduced.
/// An assignment satisfies the result iff the diagram maps it to 1.
///
/// A constant-1 diagram yields an empty clause list (always satisfiable);
/// a constant-0 diagram yields a single empty clause.
CnfFormula encode_function(const Obdd& d);

/// The instance as n soft-ready unit clauses: {+(i+1)} when x_i = 1,
/// {-(i+1)} when x_i = 0.
std::vector<Clause> encode_instance(const Instance& x);

} // namespace cfx
