/* Copyright 2026 The Tuberscope Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "tuberscope/monte_carlo.hpp"

#include <cstdio>

#include "tuberscope/estimate.hpp"
#include "tuberscope/format.hpp"
#include "tuberscope/parallel.hpp"
#include "tuberscope/silhouette.hpp"

namespace tuberscope {

TrialResult run_trial(const TriMesh& mesh, double true_volume, const ConstraintMode& mode,
                      std::uint64_t seed, std::uint64_t trial_index,
                      const MonteCarloOptions& opts) {
  TrialResult r;
  r.trial_index = trial_index;
  r.true_volume = true_volume;
  const UnitQuaternion start = shoemake_sample(trial_triple(seed, trial_index));
  r.rotation = start;
  try {
    if (std::holds_alternative<Plane>(mode))
      r.rotation = settle_on_plane(mesh, start);
    else if (const auto* rollers = std::get_if<Rollers>(&mode))
      r.rotation = settle_on_rollers(mesh, start, *rollers);

    const Silhouette s = project_silhouette(rotate_mesh(mesh, r.rotation), opts.pixel_size);
    const SilhouetteEstimates est = estimate_from_silhouette(s, opts.density);
    r.projected_area = est.ellipsoid.a_proj;
    r.est_volume_ellipsoid = est.ellipsoid.volume;
    r.est_volume_square_cube = est.square_cube.volume;
  } catch (const Error& e) {
    r.status = TrialStatus::Skipped;
    r.reason = e.what();
  }
  return r;
}

std::vector<TrialResult> run_monte_carlo(const TriMesh& mesh, const ConstraintMode& mode,
                                         std::size_t n_trials, std::uint64_t seed,
                                         const MonteCarloOptions& opts) {
  if (!(opts.pixel_size > 0.0)) throw DomainError("pixel size must be positive");
  if (!(opts.density > 0.0)) throw DomainError("density must be positive");
  if (const auto* rollers = std::get_if<Rollers>(&mode)) rollers->validate();
  std::vector<TrialResult> out(n_trials);
  if (n_trials == 0) return out;
  const double true_volume = mesh_volume(mesh);
  parallel_for(n_trials, resolve_thread_count(opts.threads), [&](std::size_t i) {
    out[i] = run_trial(mesh, true_volume, mode, seed, i, opts);
  });
  return out;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialResult>& trials) {
  out << kTrialCsvHeader << '\n';
  for (const auto& t : trials) {
    out << t.trial_index << ',' << fmt_num(t.rotation.w()) << ',' << fmt_num(t.rotation.x())
        << ',' << fmt_num(t.rotation.y()) << ',' << fmt_num(t.rotation.z()) << ',';
    if (t.ok()) {
      out << fmt_num(t.projected_area) << ',' << fmt_num(t.est_volume_ellipsoid) << ','
          << fmt_num(t.est_volume_square_cube) << ',' << fmt_num(t.true_volume) << ",ok\n";
    } else {
      out << ",,," << fmt_num(t.true_volume) << ",skipped:" << csv_safe(t.reason) << '\n';
    }
  }
}

}  // namespace tuberscope
