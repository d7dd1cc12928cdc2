#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qmtl/dynamics.hpp"

namespace qmtl {

template <class V>
struct TranslationCertificate {
  Rational tau{0};
  OmegaMode mode = OmegaMode::contact;
  bool elliptic = true;
  long long witness_k = 1;
  std::optional<HyperplaneHandle<V>> witness;  // K, for g itself (not a conjugate)
  std::size_t witness_distance = 0;            // d(K, g^k K)
  long long verified_depth = 0;
  // search data
  long long Q = 0;
  long long radius = 0;
  BigInt k_max{0};
  std::size_t hqc = 0;
  bool hqc_exact = true;
  long long L = 0;
  Rational tau_X{0};
  std::size_t candidates = 0;
  std::string classification;  // how the verdict was reached
};

struct TranslationOptions {
  long long j_max = 4;
  bool full_radius = false;     // ball radius N^{2M} instead of 4M+1
  bool paper_faithful = false;   // elliptic/loxodromic by the 17-delta displacement test
  long long k_max_limit = 1 << 16;
  unsigned threads = 1;
  DynamicsOptions dynamics;
};

/// (N^{2M})! as an exact integer; refuses when N^{2M} exceeds `limit`.
inline BigInt paper_faithful_k(std::size_t N, std::size_t M, unsigned long limit = 100000) {
  BigInt base = ipow(BigInt(N), 2ul * M);
  if (base > limit) throw BudgetExceeded("N^{2M} = " + base.str() + " is too large to take a factorial of");
  BigInt f = 1;
  for (unsigned long i = 2; i <= static_cast<unsigned long>(base); ++i) f *= i;
  return f;
}

/// Exact translation length in the crossing or contact graph.
template <QMBackend B>
class Translation {
 public:
  using V = typename B::Vertex;
  using Iso = typename B::Iso;
  using Hyp = HyperplaneHandle<V>;
  using Cert = TranslationCertificate<V>;

  Translation(const Omega<B>& W, TranslationOptions opt = {})
      : W_(W), H_(W.hyperplanes()), X_(H_.backend()), opt_(opt), D_(W, opt.dynamics) {}

  const Dynamics<B>& dynamics() const { return D_; }

  Cert run(const Iso& g) const {
    Cert c;
    c.mode = W_.mode();
    auto [h, conj] = X_.conjugate_reduce(g);
    auto cls = D_.classify(h, opt_.paper_faithful);
    c.classification = cls.method;
    if (cls.verdict == Verdict::elliptic) return c;
    c.elliptic = false;

    auto axis = D_.axis_data(h);
    const long long M = static_cast<long long>(axis.hqc);
    const long long L = axis.ss_power;
    const std::size_t N = X_.cliques_per_vertex();
    c.hqc = axis.hqc;
    c.hqc_exact = axis.hqc_exact;
    c.L = L;
    c.tau_X = axis.tau_X;
    c.Q = 1 + L * (4 * M + 1);
    c.k_max = ipow(BigInt(N), 2ul * static_cast<unsigned long>(M));
    if (c.k_max > opt_.k_max_limit)
      throw BudgetExceeded("power bound N^{2M} = " + c.k_max.str() + " exceeds the configured limit");
    const long long kmax = static_cast<long long>(c.k_max);
    if (opt_.full_radius) {
      c.radius = kmax;
    } else {
      c.radius = 4 * M + 1;
    }

    const V x = axis.ss_edge.tail;
    auto cands = candidates(h, x, c.Q, c.radius);
    c.candidates = cands.size();
    if (cands.empty()) throw ContractViolation("no candidate hyperplanes near the axis");

    // One subgraph over a convex set C serves every pair of hyperplanes whose
    // carriers both meet C: for a, b carrier vertices in C a closest pair of
    // carriers lies in I(a,b), inside C. Other pairs are computed on their own.
    const V lo = X_.apply(X_.power(h, -c.Q), x), hi = X_.apply(X_.power(h, c.Q + kmax), x);
    OmegaSubgraph<B> G(H_, X_.interval(lo, hi), W_.mode());

    struct Best {
      std::size_t d = 0;
      long long k = 0;
      std::size_t idx = 0;
      bool set = false;
    };
    std::vector<Best> per(cands.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;

    auto work = [&]() {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < cands.size();) {
          const Hyp& K = cands[i];
          auto src = G.find(K.key);
          std::optional<typename OmegaSubgraph<B>::Search> s;
          if (src) s = G.bfs(*src);
          Best b;
          for (long long k = 1; k <= kmax; ++k) {
            opt_.dynamics.budget.check("translation search");
            Hyp gK = H_.translate(X_.power(h, k), K);
            std::optional<std::size_t> d;
            auto dst = G.find(gK.key);
            if (s && dst && s->dist[*dst] >= 0) d = static_cast<std::size_t>(s->dist[*dst]);
            if (!d) d = W_.distance(K, gK).value;
            if (!d) continue;
            // d/k < b.d/b.k, ties to the smaller k (already first)
            if (!b.set || *d * static_cast<std::size_t>(b.k) < b.d * static_cast<std::size_t>(k)) {
              b = {*d, k, i, true};
            }
          }
          per[i] = b;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mu);
        if (!failure) failure = std::current_exception();
        next = cands.size();
      }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(opt_.threads, static_cast<unsigned>(cands.size())));
    if (nt == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // deterministic reduction: smallest ratio, then smaller k, then key order
    std::optional<Best> best;
    for (const auto& b : per) {
      if (!b.set) continue;
      if (!best) {
        best = b;
        continue;
      }
      auto lhs = b.d * static_cast<std::size_t>(best->k), rhs = best->d * static_cast<std::size_t>(b.k);
      if (lhs < rhs || (lhs == rhs && b.k < best->k)) best = b;
    }
    if (!best) throw VerificationFailure("no candidate hyperplane has a finite displacement");

    c.witness_k = best->k;
    c.witness_distance = best->d;
    c.tau = Rational(static_cast<long long>(best->d), best->k);
    // report K for g itself: g = conj h conj^-1, so conj.K works for g
    Hyp K = H_.translate(conj, cands[best->idx]);
    c.witness = K;
    verify(g, c);
    check_denominator(c);
    return c;
  }

  /// Hyperplanes in contact with B(x, radius) ∩ I(h^-Q x, h^Q x), sorted by
  /// key.
  std::vector<Hyp> candidates(const Iso& h, const V& x, long long Q, long long radius) const {
    std::vector<Hyp> out;
    for (const auto& z : X_.interval(X_.apply(X_.power(h, -Q), x), X_.apply(X_.power(h, Q), x))) {
      if (static_cast<long long>(X_.distance(x, z)) > radius) continue;
      for (auto& J : H_.menu_hyperplanes(z)) out.push_back(std::move(J));
    }
    std::sort(out.begin(), out.end(), [](const Hyp& a, const Hyp& b) { return a.key < b.key; });
    out.erase(std::unique(out.begin(), out.end(), [](const Hyp& a, const Hyp& b) { return a.key == b.key; }),
              out.end());
    return out;
  }

 private:
  void verify(const Iso& g, Cert& c) const {
    const Hyp& K = *c.witness;
    for (long long j = 1; j <= opt_.j_max; ++j) {
      auto d = W_.value(K, H_.translate(X_.power(g, j * c.witness_k), K));
      if (!d || *d != static_cast<std::size_t>(j) * c.witness_distance)
        throw VerificationFailure("d(K, g^" + std::to_string(j * c.witness_k) + " K) = " +
                                  (d ? std::to_string(*d) : std::string("inf")) + ", expected " +
                                  std::to_string(j * static_cast<long long>(c.witness_distance)));
      c.verified_depth = j;
    }
  }

  void check_denominator(const Cert& c) const {
    const auto& prof = X_.profile();
    if (!prof.qm_delta || !prof.denom_bound_gp) return;
    if (boost::multiprecision::denominator(c.tau) > *prof.denom_bound_gp)
      throw VerificationFailure("denominator of tau exceeds |V|^{40 clique}");
  }

  const Omega<B>& W_;
  const Hyperplanes<B>& H_;
  const B& X_;
  TranslationOptions opt_;
  Dynamics<B> D_;
};

}  // namespace qmtl
