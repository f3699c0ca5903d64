#include "trafficlab/experiments.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace trafficlab {

std::vector<MultiPartition> inconsistency_search(const ChainSpec& spec, bool require_empty_j, const Guards& guards) {
  const SquaredChain chain = build_squared_chain(spec);
  const ColoredDigraph& t = chain.skeleton;
  const StringAssignment& a = spec.assignment;
  const int strings = a.string_count();

  MultiPartition pi = rho_all(t, a);
  std::vector<std::vector<Partition>> choices;
  double total = 1;
  for (const auto& r : pi) {
    total *= static_cast<double>(bell_number(r.block_count()));
    if (total > guards.max_partition_tuples)
      throw GuardError("guard-partitions", "inconsistency search exceeds the partition guard");
    choices.push_back(enumerate_partitions(r.ground_size(), r));
  }
  // GCC(T,π,s) depends on π_t for every t sharing a color with s.
  std::vector<std::vector<int>> ready_at(static_cast<std::size_t>(strings));
  for (int s = 0; s < strings; ++s) {
    int last = s;
    for (int c : a.colors_of(s))
      for (int t2 : a.strings_of(c)) last = std::max(last, t2);
    ready_at[static_cast<std::size_t>(last)].push_back(s);
  }

  std::vector<MultiPartition> hits;
  std::function<void(int)> rec = [&](int s) {
    if (s == strings) {
      if (!require_empty_j || j_set(chain, pi).empty()) hits.push_back(pi);
      return;
    }
    for (const auto& p : choices[static_cast<std::size_t>(s)]) {
      pi[static_cast<std::size_t>(s)] = p;
      bool trees = true;
      for (int r : ready_at[static_cast<std::size_t>(s)])
        if (!(trees = is_tree(gcc(t, pi, a, r).graph))) break;
      if (trees) rec(s + 1);
    }
    pi[static_cast<std::size_t>(s)] = choices[static_cast<std::size_t>(s)].front();
  };
  rec(0);
  return hits;
}

namespace {

void for_each_composition(int parts, int max_total, std::vector<int>& cur, const std::function<void()>& visit) {
  if (static_cast<int>(cur.size()) == parts) {
    visit();
    return;
  }
  int used = 0;
  for (int x : cur) used += x;
  const int left = parts - static_cast<int>(cur.size()) - 1;
  for (int x = 1; used + x + left <= max_total; ++x) {
    cur.push_back(x);
    for_each_composition(parts, max_total, cur, visit);
    cur.pop_back();
  }
}

// Words in restricted growth form: first occurrences of colors are in order.
void for_each_word(int length, std::vector<int>& cur, int colors, const std::function<void(int)>& visit) {
  if (static_cast<int>(cur.size()) == length) {
    visit(colors);
    return;
  }
  for (int c = 0; c <= colors; ++c) {
    if (!cur.empty() && cur.back() == c) continue;
    cur.push_back(c);
    for_each_word(length, cur, std::max(colors, c + 1), visit);
    cur.pop_back();
  }
}

void for_each_mask_multiset(int strings, unsigned limit, std::vector<unsigned>& cur,
                            const std::function<void()>& visit) {
  if (static_cast<int>(cur.size()) == strings) {
    visit();
    return;
  }
  for (unsigned m = cur.empty() ? 1u : cur.back(); m < limit; ++m) {
    cur.push_back(m);
    for_each_mask_multiset(strings, limit, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ChainSpec> small_chain_specs(int max_strings, int max_length) {
  std::vector<ChainSpec> out;
  for (int k = 1; k <= max_length; ++k) {
    std::vector<int> ell;
    for_each_composition(k, max_length, ell, [&] {
      std::vector<int> word;
      for_each_word(k, word, 0, [&](int colors) {
        std::vector<std::string> color_names;
        for (int c = 0; c < colors; ++c) color_names.push_back(std::string(1, static_cast<char>('a' + c)));
        const unsigned full = (1u << colors) - 1;
        for (int strings = 1; strings <= max_strings; ++strings) {
          std::vector<unsigned> masks;
          for_each_mask_multiset(strings, full + 1, masks, [&] {
            unsigned cover = 0;
            for (unsigned m : masks) cover |= m;
            if (cover != full) return;
            std::vector<std::string> names;
            std::vector<std::pair<int, int>> inc;
            for (int s = 0; s < strings; ++s) {
              names.push_back("s" + std::to_string(s + 1));
              for (int c = 0; c < colors; ++c)
                if (masks[static_cast<std::size_t>(s)] >> c & 1u) inc.emplace_back(s, c);
            }
            ChainSpec spec;
            spec.assignment = StringAssignment(names, color_names, inc);
            spec.color_graph = spec.assignment.derived_color_graph();
            if (!is_g_reduced(word, spec.color_graph)) return;
            spec.chi = word;
            spec.ell = ell;
            out.push_back(std::move(spec));
          });
        }
      });
    });
  }
  return out;
}

std::vector<ChainSpec> chain_specs_for(const StringAssignment& a, int max_length) {
  std::vector<ChainSpec> out;
  const ColorGraph g = a.derived_color_graph();
  const int colors = a.color_count();
  for (int k = 1; k <= max_length; ++k) {
    std::vector<int> ell;
    for_each_composition(k, max_length, ell, [&] {
      std::vector<int> word(static_cast<std::size_t>(k), 0);
      while (true) {
        if (is_g_reduced(word, g)) {
          ChainSpec spec;
          spec.color_graph = g;
          spec.assignment = a;
          spec.chi = word;
          spec.ell = ell;
          out.push_back(std::move(spec));
        }
        int i = k - 1;
        while (i >= 0 && ++word[static_cast<std::size_t>(i)] == colors) word[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
      }
    });
  }
  return out;
}

std::string describe(const ChainSpec& spec) {
  std::ostringstream os;
  const auto& colors = spec.assignment.colors();
  os << "chi=";
  for (std::size_t i = 0; i < spec.chi.size(); ++i)
    os << (i ? "," : "") << colors[static_cast<std::size_t>(spec.chi[i])];
  os << " ell=";
  for (std::size_t i = 0; i < spec.ell.size(); ++i) os << (i ? "," : "") << spec.ell[i];
  os << " strings=";
  for (int s = 0; s < spec.assignment.string_count(); ++s) {
    os << (s ? ";" : "") << spec.assignment.strings()[static_cast<std::size_t>(s)] << ":{";
    const auto& cs = spec.assignment.colors_of(s);
    for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << colors[static_cast<std::size_t>(cs[i])];
    os << "}";
  }
  return os.str();
}

double chain_norm_sample(const ChainSpec& spec, int n, std::uint64_t seed, int sample, const Guards& guards) {
  Rng rng = derive_rng(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(sample)});
  const bool fast =
      spec.lambda_generator == LambdaGenerator::identity && spec.x_generator != XGenerator::signed_permutation;
  if (!fast) {
    ChainMatrices<double> m = generate_chain_matrices<double>(spec, n, rng);
    auto sigmas = sample_color_permutations(spec.assignment, n, rng);
    return centered_chain_norm_squared(chain_factors(spec, m, sigmas, n, guards));
  }
  // Same draws as generate_chain_matrices, without the dense matrices.
  std::vector<std::vector<Permutation>> xs;
  for (int i = 0; i < spec.k(); ++i) {
    const int c = spec.chi[static_cast<std::size_t>(i)];
    const int m = static_cast<int>(checked_pow(n, static_cast<Index>(spec.assignment.strings_of(c).size())));
    xs.emplace_back();
    for (int j = 0; j < spec.ell[static_cast<std::size_t>(i)]; ++j)
      xs.back().push_back(spec.x_generator == XGenerator::cyclic_shift ? Permutation::cyclic_shift(m)
                                                                        : Permutation::sample(m, rng));
  }
  auto sigmas = sample_color_permutations(spec.assignment, n, rng);
  MultiIndexSpace space(spec.assignment.string_count(), n);
  if (space.dimension() > std::numeric_limits<int>::max())
    throw GuardError("guard-dense", "full space too large for the permutation path");
  std::vector<Permutation> ys;
  for (int i = 0; i < spec.k(); ++i) {
    const int c = spec.chi[static_cast<std::size_t>(i)];
    Permutation y = Permutation::identity(static_cast<int>(space.dimension()));
    for (const auto& x : xs[static_cast<std::size_t>(i)]) {
      CoordinatePermutation cp(spec.assignment.strings_of(c), n, conjugate(x, sigmas[static_cast<std::size_t>(c)]));
      y = y.compose(cp.expand(space));
    }
    ys.push_back(std::move(y));
  }
  return static_cast<double>(centered_chain_returns(ys)) / static_cast<double>(space.dimension());
}

double log_log_slope(const std::vector<int>& ns, const std::vector<double>& values) {
  if (ns.size() != values.size() || ns.size() < 2) throw std::invalid_argument("slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(values[i] > 0)) return std::numeric_limits<double>::quiet_NaN();
    const double x = std::log(ns[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConvergenceReport convergence_run(const ChainSpec& spec, const std::vector<int>& ns, int samples, std::uint64_t seed,
                                  int workers, const Guards& guards) {
  spec.validate();
  if (samples < 2) throw std::invalid_argument("convergence: at least two samples required");
  if (ns.empty()) throw std::invalid_argument("convergence: empty N grid");
  for (int n : ns)
    if (n < 1) throw std::invalid_argument("convergence: N must be positive");
  workers = std::max(1, workers);
  ConvergenceReport report;
  std::vector<double> means;
  for (int n : ns) {
    std::vector<double> values(static_cast<std::size_t>(samples));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
      try {
        for (int i = w; i < samples; i += workers)
          values[static_cast<std::size_t>(i)] = chain_norm_sample(spec, n, seed, i, guards);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    ConvergencePoint p;
    p.n = n;
    p.samples = samples;
    for (double v : values) p.mean += v;
    p.mean /= samples;
    for (double v : values) p.variance += (v - p.mean) * (v - p.mean);
    p.variance /= samples - 1;
    p.stderr_mean = std::sqrt(p.variance / samples);
    report.points.push_back(p);
    means.push_back(p.mean);
  }
  for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
    const auto& a = report.points[i];
    const auto& b = report.points[i + 1];
    if (b.mean > a.mean + 2 * std::sqrt(a.stderr_mean * a.stderr_mean + b.stderr_mean * b.stderr_mean))
      report.nonincreasing = false;
  }
  report.slope = ns.size() >= 2 ? log_log_slope(ns, means) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace trafficlab
