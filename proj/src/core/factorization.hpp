#pragma once

#include <map>

#include "core/filter.hpp"

namespace qsub {

using FactorFamily = std::map<MultiIndex, RationalFilter>;  // alpha -> filter, |alpha| = m

// {v_alpha} with u^(xi) = sum_{|alpha|=m} (nabla^alpha delta)^(N xi) v_alpha^(xi). Requires every
// N-coset of u to have vanishing moments of order < m.
FactorFamily lemma21_factorize(const RationalFilter& u, int N, int m);

// Left side sum_alpha upsample(nabla^alpha delta, N) * v_alpha.
RationalFilter lemma21_expand(const FactorFamily& v, int N, int dim);

struct Lemma22Result {
  FactorFamily b;
  bool identity_exact = false;       // (nabla^mu delta) * a == sum_alpha upsample(nabla^alpha delta, M) * b_alpha
  bool zero_frequency_exact = false; // b_alpha^(0) == delta(alpha - mu) M^{-m} a^(0)
  double alias_residual = 0;         // max deviation of b_alpha^(2 pi omega), omega != 0
};

// Requires sr(a, M) >= |mu|.
Lemma22Result lemma22_factorize(const RationalFilter& a, int M, const MultiIndex& mu);

}  // namespace qsub
