#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "lattab/compensated.hpp"
#include "lattab/sums.hpp"

namespace lattab {

namespace {

constexpr int kCachedTmax = 400;

std::shared_ptr<const std::vector<ShellPoint>> build_table(int t_max) {
  auto out = std::make_shared<std::vector<ShellPoint>>();
  const int b = r_shell_box_bound(t_max);
  for (int m = -b; m <= b; ++m)
    for (int n = -b; n <= b; ++n)
      for (int p = -b; p <= b; ++p) {
        const long long r = form_R(m, n, p);
        if (r >= 1 && r <= t_max) out->push_back({{m, n, p}, r, form_T(m, n, p)});
      }
  std::sort(out->begin(), out->end(), [](const ShellPoint& a, const ShellPoint& c) {
    if (a.r != c.r) return a.r < c.r;
    return a.k < c.k;
  });
  return out;
}

}  // namespace

int r_shell_box_bound(int t) {
  if (t <= 0) return 0;
  return int(std::ceil(2.0 * std::sqrt(double(t))));
}

std::shared_ptr<const std::vector<ShellPoint>> r_shell_table(int t_max) {
  if (t_max < 1) return std::make_shared<const std::vector<ShellPoint>>();
  if (t_max > kCachedTmax) return build_table(t_max);

  static std::shared_mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<ShellPoint>>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(t_max); it != cache.end()) return it->second;
  }
  auto table = build_table(t_max);
  std::unique_lock lock(mutex);
  return cache.emplace(t_max, std::move(table)).first->second;
}

std::vector<double> r_shell_sums(const std::function<double(double)>& F,
                                 std::span<const Polynomial3> weights, int t_max) {
  const auto table = r_shell_table(t_max);
  int deg = 0;
  for (const auto& w : weights) deg = std::max(deg, w.degree());
  PowerTable pw(deg);
  std::vector<CompensatedSum> acc(weights.size());
  long long shell = -1;
  double f = 0.0;
  for (const auto& pt : *table) {
    if (pt.r != shell) {
      shell = pt.r;
      f = F(double(shell));
    }
    pw.set(pt.k[0], pt.k[1], pt.k[2]);
    for (std::size_t i = 0; i < weights.size(); ++i) acc[i].add(pw.eval(weights[i]) * f);
  }
  std::vector<double> out;
  for (const auto& a : acc) out.push_back(a.value());
  return out;
}

double r_shell_sum(const std::function<double(double)>& F, const Polynomial3& weight, int t_max) {
  return r_shell_sums(F, std::span<const Polynomial3>(&weight, 1), t_max)[0];
}

long long cumulative_T(int t) {
  long long a = 0;
  for (const auto& pt : *r_shell_table(t)) a += pt.t;
  return a;
}

}  // namespace lattab
