#include "bolkit/mlt.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace bolkit {

namespace {

std::vector<Permutation> translations(const CayleyTable& L) {
  std::vector<Permutation> out;
  for (Element x = 0; x < L.order(); ++x)
    if (x != L.identity()) out.push_back(left_translation(L, x));
  return out;
}

// Filter the enumeration of Mlt(L) by alpha(x) in Nx.
std::vector<Permutation> filter_l_of_n(const CayleyTable& L, const SubloopMask& N,
                                       const std::vector<Permutation>& mlt_elements) {
  if (!is_subloop(L, N)) throw Error(Errc::not_a_subloop, "set is not a subloop");
  const std::size_t n = L.order();
  const auto members = N.elements();
  std::vector<bool> in_coset(n * n, false);  // [x * n + v]: v in Nx
  for (Element x = 0; x < n; ++x)
    for (Element m : members) in_coset[x * n + L(m, x)] = true;
  std::vector<Permutation> out;
  for (const auto& alpha : mlt_elements) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = in_coset[x * n + alpha(x)];
    if (ok) out.push_back(alpha);
  }
  return out;
}

}  // namespace

PermutationGroup mlt_group(const CayleyTable& L) {
  return PermutationGroup(L.order(), translations(L));
}

PermutationGroup inner_mapping_group(const CayleyTable& L) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> gens;
  for (Element x = 0; x < L.order(); ++x)
    for (Element y = 0; y < L.order(); ++y) {
      Permutation d = inner_mapping(L, x, y);
      if (!d.is_identity() && seen.insert(d).second) gens.push_back(std::move(d));
    }
  return PermutationGroup(L.order(), std::move(gens));
}

PermutationGroup inner_group(const CayleyTable& L) {
  PermutationGroup stabilizer = point_stabilizer(mlt_group(L), L.identity());
  const PermutationGroup generated = inner_mapping_group(L);
  if (!same_group(stabilizer, generated))
    throw Error(Errc::inner_mismatch,
                "identity stabilizer has order " + std::to_string(stabilizer.order()) +
                    " but the inner mappings generate order " +
                    std::to_string(generated.order()));
  return stabilizer;
}

std::vector<Permutation> l_of_n_elements(const CayleyTable& L, const SubloopMask& N,
                                         std::uint64_t bound) {
  return filter_l_of_n(L, N, mlt_group(L).elements(bound));
}

PermutationGroup l_of_n(const CayleyTable& L, const SubloopMask& N, std::uint64_t bound) {
  return subgroup_from_elements(L.order(), l_of_n_elements(L, N, bound));
}

InducedEpimorphism::InducedEpimorphism(const CayleyTable& L, const SubloopMask& N,
                                       std::uint64_t bound)
    : factor_(factor_loop(L, N)),
      source_(mlt_group(L)),
      target_(mlt_group(factor_.quotient)),
      elements_(source_.elements(bound)) {
  const CayleyTable& Q = factor_.quotient;
  const LoopHom& theta = factor_.projection;

  std::vector<Permutation> gens, gen_images;
  for (Element a = 0; a < L.order(); ++a) {
    if (a == L.identity()) continue;
    gens.push_back(left_translation(L, a));
    gen_images.push_back(left_translation(Q, theta(a)));
  }

  std::unordered_map<Permutation, Permutation, PermutationHash> image;
  image.reserve(elements_.size());
  std::vector<Permutation> queue{Permutation::identity(L.order())};
  image.emplace(queue.front(), Permutation::identity(Q.order()));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Permutation alpha = queue[i];
    const Permutation alpha_image = image.at(alpha);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation beta = gens[k] * alpha;
      Permutation beta_image = gen_images[k] * alpha_image;
      auto [it, inserted] = image.try_emplace(beta, beta_image);
      if (inserted) queue.push_back(std::move(beta));
      else if (it->second != beta_image)
        throw Error(Errc::not_a_homomorphism,
                    "two generator words for " + beta.to_string() + " have different images");
    }
  }
  if (queue.size() != elements_.size())
    throw Error(Errc::numerical_failure, "Cayley graph walk and stabilizer chain disagree on |Mlt|");

  std::unordered_set<Permutation, PermutationHash> distinct;
  for (const auto& alpha : elements_) {
    const Permutation& img = image.at(alpha);
    if (img != (*this)(alpha))
      throw Error(Errc::not_a_homomorphism,
                  "image of " + alpha.to_string() + " differs from theta(alpha(x))");
    if (img.is_identity()) kernel_.push_back(alpha);
    distinct.insert(img);
  }
  image_order_ = distinct.size();
}

Permutation InducedEpimorphism::operator()(const Permutation& alpha) const {
  const LoopHom& theta = factor_.projection;
  const std::size_t q = factor_.quotient.order();
  constexpr Element unset = ~Element{0};
  std::vector<Element> images(q, unset);
  for (Element x = 0; x < theta.source.order(); ++x) {
    const Element v = theta(alpha(x));
    Element& slot = images[theta(x)];
    if (slot == unset) slot = v;
    else if (slot != v)
      throw Error(Errc::not_a_homomorphism, alpha.to_string() + " does not respect the cosets");
  }
  return Permutation(std::move(images));
}

PermutationGroup InducedEpimorphism::kernel() const {
  return subgroup_from_elements(source_.degree(), kernel_);
}

KernelCorrespondenceReport check_kernel_correspondence(const CayleyTable& L, const SubloopMask& N, std::uint64_t bound) {
  const InducedEpimorphism epi(L, N, bound);
  const auto lofn = filter_l_of_n(L, N, epi.source_elements());
  const PermutationGroup lofn_group = subgroup_from_elements(L.order(), lofn);

  KernelCorrespondenceReport r;
  r.mlt_order = epi.source().order();
  r.quotient_mlt_order = epi.target().order();
  r.l_of_n_order = lofn.size();
  r.kernel_equals_l_of_n = epi.kernel_elements() == lofn;
  r.l_of_n_normal = lofn_group.order() == lofn.size() && is_normal_subgroup(epi.source(), lofn_group);
  r.order_product_holds = epi.image_order() == r.quotient_mlt_order &&
                          r.quotient_mlt_order * r.l_of_n_order == r.mlt_order;
  r.properness_equivalent = (N.size() < L.order()) == (r.l_of_n_order < r.mlt_order);
  return r;
}

QuasidirectProduct::QuasidirectProduct(const CayleyTable& L, std::uint64_t bound)
    : loop_(L), mlt_(mlt_group(L)), inner_(inner_group(L).elements(bound)) {}

QdElement QuasidirectProduct::identity() const {
  return {loop_.identity(), Permutation::identity(loop_.order())};
}

QdElement QuasidirectProduct::multiply(const QdElement& p, const QdElement& q) const {
  const Element moved = p.alpha(q.x);
  return {loop_(p.x, moved), inner_mapping(loop_, p.x, moved) * p.alpha * q.alpha};
}

Permutation QuasidirectProduct::to_mlt(const QdElement& p) const {
  return left_translation(loop_, p.x) * p.alpha;
}

QdElement QuasidirectProduct::element(std::size_t index) const {
  return {static_cast<Element>(index / inner_.size()), inner_[index % inner_.size()]};
}

QuasidirectReport QuasidirectProduct::verify(std::size_t exhaustive_bound,
                                             std::size_t spot_checks, std::uint64_t seed,
                                             ExecPolicy policy) const {
  QuasidirectReport r;
  const std::size_t n = size();
  r.size = n;
  r.mlt_order = mlt_.order();

  std::unordered_map<Permutation, std::size_t, PermutationHash> inner_index;
  for (std::size_t i = 0; i < inner_.size(); ++i) inner_index.emplace(inner_[i], i);
  constexpr std::size_t outside = ~std::size_t{0};
  auto index_of = [&](const QdElement& e) -> std::size_t {
    auto it = inner_index.find(e.alpha);
    return it == inner_index.end() ? outside : e.x * inner_.size() + it->second;
  };

  std::vector<QdElement> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back(element(i));

  // The multiplication table is only materialized for the exhaustive checks.
  const bool full_table = n <= 4096;
  std::vector<std::size_t> table;
  auto product = [&](std::size_t p, std::size_t q) {
    return full_table ? table[p * n + q] : index_of(multiply(elems[p], elems[q]));
  };
  if (full_table) {
    table.resize(n * n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::parallel)
    for (std::ptrdiff_t p = 0; p < count; ++p)
      for (std::size_t q = 0; q < n; ++q)
        table[p * n + q] = index_of(multiply(elems[p], elems[q]));
    r.closed = std::find(table.begin(), table.end(), outside) == table.end();
  } else {
    r.closed = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < spot_checks && r.closed; ++k)
      r.closed = product(pick(rng), pick(rng)) != outside;
  }
  if (!r.closed) return r;

  const std::size_t e = index_of(identity());
  r.identity_neutral = true;
  for (std::size_t p = 0; p < n && r.identity_neutral; ++p)
    r.identity_neutral = product(e, p) == p && product(p, e) == p;

  if (n <= exhaustive_bound) {
    r.exhaustive_associativity = true;
    r.associative = !par::first_failing_triple(policy, n, [&](Element a, Element b, Element c) {
      return product(product(a, b), c) == product(a, product(b, c));
    });
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    r.associative = true;
    for (std::size_t k = 0; k < spot_checks && r.associative; ++k) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      r.associative = product(product(a, b), c) == product(a, product(b, c));
    }
  }

  std::vector<Permutation> phi;
  phi.reserve(n);
  for (const auto& el : elems) phi.push_back(to_mlt(el));
  std::unordered_set<Permutation, PermutationHash> distinct(phi.begin(), phi.end());
  r.bijective = distinct.size() == n && n == r.mlt_order &&
                std::all_of(phi.begin(), phi.end(), [&](const auto& g) { return mlt_.contains(g); });

  if (full_table) {
    auto w = par::first_failing_pair(policy, n, [&](Element p, Element q) {
      return phi[product(p, q)] == phi[p] * phi[q];
    });
    r.homomorphism = !w;
    if (w) r.homomorphism_witness = std::array<std::size_t, 2>{(*w)[0], (*w)[1]};
  } else {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    r.homomorphism = true;
    for (std::size_t k = 0; k < spot_checks && r.homomorphism; ++k) {
      const std::size_t p = pick(rng), q = pick(rng);
      if (phi[product(p, q)] != phi[p] * phi[q]) {
        r.homomorphism = false;
        r.homomorphism_witness = std::array<std::size_t, 2>{p, q};
      }
    }
  }
  return r;
}

}  // namespace bolkit
