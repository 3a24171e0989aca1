// Copyright 2026 The qae-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qae/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qae/model_io.hpp"

namespace qae {
namespace {

std::string num(double x) { return format_number(x); }
std::string num(int x) { return std::to_string(x); }
std::string num(std::size_t x) { return std::to_string(x); }

std::string channel_label(const ChannelSpec& c) {
  return std::string(to_string(c.kind)) + " p=" + format_number(c.p);
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

// Theoretical GHZ fidelity of the raw noisy input, empty when the closed
// forms do not apply (single-qubit inputs).
std::string theoretical_cell(const ChannelSpec& channel, int m) {
  if (m < 2) return "";
  return num(theoretical_fidelity(channel, m));
}

std::uint64_t run_seed(const ExperimentConfig& c, int replicate) {
  return c.replicates == 1 ? c.seed : derive_seed(c.seed, {stream::kReplicate, static_cast<std::uint64_t>(replicate)});
}

std::string p_tag(double p) {
  std::string s = format_number(p);
  std::replace(s.begin(), s.end(), '.', '_');
  return s;
}

Table log_table(const TrainingLog& log) {
  Table t{{"epoch", "train_fidelity", "val_fidelity", "train_cost", "elapsed_seconds"}, {}};
  for (const auto& e : log) {
    t.add_row({num(e.epoch), num(e.train_fidelity), num(e.val_fidelity), num(e.train_cost), fixed(e.elapsed_seconds)});
  }
  return t;
}

ExperimentOutput run_train(const ExperimentConfig& c) {
  struct Job {
    double p;
    int replicate;
  };
  std::vector<Job> jobs;
  for (double p : c.p_grid) {
    for (int r = 0; r < c.replicates; ++r) jobs.push_back({p, r});
  }
  std::vector<std::optional<TrainResult>> results(jobs.size());
  std::vector<Evaluation> evaluations(jobs.size());

  const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (n_jobs > 1)
  for (std::ptrdiff_t j = 0; j < n_jobs; ++j) {
    const Job& job = jobs[static_cast<std::size_t>(j)];
    TrainingConfig tc = c.training;
    tc.seed = run_seed(c, job.replicate);
    const ChannelSpec channel{c.channel.kind, job.p};
    results[static_cast<std::size_t>(j)] = train(c.topology, channel, tc);
    Rng rng = make_rng(tc.seed, {stream::kEvaluation});
    evaluations[static_cast<std::size_t>(j)] = evaluate(results[static_cast<std::size_t>(j)]->model, channel, c.n_states, rng);
  }

  ExperimentOutput out;
  const bool single = jobs.size() == 1;
  Table convergence{{"p", "replicate", "seed", "epochs", "first_epoch_above_threshold", "final_train_fidelity",
                     "final_val_fidelity", "test_mean_fidelity", "test_std_fidelity", "theoretical_fidelity"},
                    {}};
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const TrainResult& r = *results[j];
    const std::string suffix = single ? "" : "_p" + p_tag(jobs[j].p) + "_r" + std::to_string(jobs[j].replicate);
    out.tables.push_back({"training_log" + suffix + ".csv", log_table(r.log)});
    out.models.push_back({"model" + suffix + ".json", r.model});
    const double final_train = r.log.empty() ? r.initial_train_fidelity : r.log.back().train_fidelity;
    const double final_val = r.log.empty() ? std::numeric_limits<double>::quiet_NaN() : r.log.back().val_fidelity;
    convergence.add_row({num(jobs[j].p), num(jobs[j].replicate), std::to_string(r.model.metadata.seed),
                         num(c.training.epochs), num(first_crossing(r.log, c.threshold)), num(final_train),
                         num(final_val), num(evaluations[j].mean), num(evaluations[j].stddev),
                         theoretical_cell({c.channel.kind, jobs[j].p}, c.topology.input_size())});
  }
  out.tables.push_back({"convergence.csv", std::move(convergence)});

  // Median crossing epoch per p; runs that never cross count as later than any that do.
  Table medians{{"p", "replicates", "median_first_epoch_above_threshold"}, {}};
  for (double p : c.p_grid) {
    std::vector<int> epochs;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].p != p) continue;
      const int e = first_crossing(results[j]->log, c.threshold);
      epochs.push_back(e < 0 ? std::numeric_limits<int>::max() : e);
    }
    std::sort(epochs.begin(), epochs.end());
    const int med = epochs[(epochs.size() - 1) / 2];
    medians.add_row({num(p), num(c.replicates), med == std::numeric_limits<int>::max() ? "-1" : num(med)});
  }
  out.tables.push_back({"convergence_median.csv", std::move(medians)});

  const TrainResult& first = *results.front();
  std::ostringstream s;
  s << "train " << c.topology.str() << " " << std::string(to_string(c.channel.kind));
  if (single) {
    s << " p=" << format_number(jobs[0].p) << ": final training fidelity "
      << fixed(first.log.empty() ? first.initial_train_fidelity : first.log.back().train_fidelity) << ", test fidelity "
      << fixed(evaluations[0].mean) << " +- " << fixed(evaluations[0].stddev) << " over " << c.n_states
      << " states (" << c.training.epochs << " epochs)";
  } else {
    s << ": " << jobs.size() << " runs over " << c.p_grid.size() << " noise strengths, " << c.training.epochs
      << " epochs each";
  }
  out.summary = s.str();
  return out;
}

void append_trained_model(ExperimentOutput& out, const ExperimentConfig& c, const QaeModel& model) {
  if (!c.model_path) out.models.push_back({"model.json", model});
}

ExperimentOutput run_evaluate_sweep(const ExperimentConfig& c) {
  const QaeModel model = obtain_model(c);
  const int m = model.topology.input_size();
  std::vector<Evaluation> evals(c.p_grid.size());
  const auto n = static_cast<std::ptrdiff_t>(c.p_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Rng rng = make_rng(c.seed, {stream::kEvaluation, static_cast<std::uint64_t>(i)});
    evals[static_cast<std::size_t>(i)] =
        evaluate(model, {c.channel.kind, c.p_grid[static_cast<std::size_t>(i)]}, c.n_states, rng, c.passes);
  }

  ExperimentOutput out;
  Table sweep{{"p", "n_states", "passes", "mean_fidelity", "std_fidelity", "theoretical_fidelity"}, {}};
  Table states{{"p", "state", "fidelity"}, {}};
  for (std::size_t i = 0; i < c.p_grid.size(); ++i) {
    const double p = c.p_grid[i];
    sweep.add_row({num(p), num(c.n_states), num(c.passes), num(evals[i].mean), num(evals[i].stddev),
                   theoretical_cell({c.channel.kind, p}, m)});
    for (std::size_t k = 0; k < evals[i].fidelities.size(); ++k) {
      states.add_row({num(p), num(k), num(evals[i].fidelities[k])});
    }
  }
  out.tables.push_back({"sweep.csv", std::move(sweep)});
  out.tables.push_back({"sweep_states.csv", std::move(states)});
  append_trained_model(out, c, model);

  double lo = 1.0, hi = 0.0;
  for (const auto& e : evals) {
    lo = std::min(lo, e.mean);
    hi = std::max(hi, e.mean);
  }
  out.summary = "evaluate-sweep " + model.topology.str() + " " + std::string(to_string(c.channel.kind)) + ": " +
                std::to_string(c.p_grid.size()) + " noise strengths, mean fidelity between " + fixed(lo) + " and " +
                fixed(hi) + (c.passes > 1 ? " (" + std::to_string(c.passes) + " passes)" : "");
  return out;
}

ExperimentOutput run_generate(const ExperimentConfig& c) {
  const QaeModel model = obtain_model(c);
  const StateVector ghz = ghz_state(model.topology.output_size());
  const double exact = fidelity(ghz, generate(model));

  // Single-shot outputs of the circuit with resets, each a pure state.
  const CompiledQae net(model);
  const StateVector zero = StateVector::zero(model.topology.input_size());
  Rng rng = make_rng(c.seed, {stream::kEvaluation});
  std::vector<double> shots;
  shots.reserve(static_cast<std::size_t>(c.n_states));
  for (int s = 0; s < c.n_states; ++s) shots.push_back(fidelity(ghz, net.forward_shot(zero, rng)));
  const Evaluation e = summarize(std::move(shots));

  ExperimentOutput out;
  Table t{{"mode", "n", "mean_fidelity", "std_fidelity"}, {}};
  t.add_row({"exact", "1", num(exact), num(0.0)});
  t.add_row({"shots", num(c.n_states), num(e.mean), num(e.stddev)});
  out.tables.push_back({"generate.csv", std::move(t)});
  append_trained_model(out, c, model);
  out.summary = "generate " + model.topology.str() + ": fidelity with GHZ_" +
                std::to_string(model.topology.output_size()) + " " + fixed(exact) + " (shot average " + fixed(e.mean) +
                " +- " + fixed(e.stddev) + ")";
  return out;
}

ExperimentOutput run_gate_noise(const ExperimentConfig& c) {
  const QaeModel model = obtain_model(c);
  std::vector<Evaluation> evals(c.sigmas.size());
  const auto n = static_cast<std::ptrdiff_t>(c.sigmas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Rng rng = make_rng(c.seed, {stream::kGateNoise, static_cast<std::uint64_t>(i)});
    evals[static_cast<std::size_t>(i)] =
        evaluate_gate_noise(model, c.channel, c.sigmas[static_cast<std::size_t>(i)], c.n_states, rng);
  }
  ExperimentOutput out;
  Table t{{"sigma", "p", "n_states", "mean_fidelity", "std_fidelity", "noisy_theoretical_fidelity"}, {}};
  for (std::size_t i = 0; i < c.sigmas.size(); ++i) {
    t.add_row({num(c.sigmas[i]), num(c.channel.p), num(c.n_states), num(evals[i].mean), num(evals[i].stddev),
               theoretical_cell(c.channel, model.topology.input_size())});
  }
  out.tables.push_back({"gate_noise.csv", std::move(t)});
  append_trained_model(out, c, model);
  out.summary = "gate-noise-sweep " + model.topology.str() + " " + channel_label(c.channel) + ": mean fidelity " +
                fixed(evals.front().mean) + " at sigma=" + format_number(c.sigmas.front()) + ", " +
                fixed(evals.back().mean) + " at sigma=" + format_number(c.sigmas.back());
  return out;
}

ExperimentOutput run_qss(const ExperimentConfig& c) {
  const bool needs_model = std::any_of(c.qss_modes.begin(), c.qss_modes.end(),
                                       [](QssMode m) { return m != QssMode::clean && m != QssMode::noisy; });
  std::optional<QaeModel> model;
  if (needs_model) model = obtain_model(c);

  struct Point {
    std::size_t mode;
    std::size_t p;
  };
  std::vector<Point> points;
  for (std::size_t j = 0; j < c.qss_modes.size(); ++j) {
    for (std::size_t i = 0; i < c.p_grid.size(); ++i) points.push_back({j, i});
  }
  std::vector<FailureRate> rates(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const Point& pt = points[static_cast<std::size_t>(k)];
    QssConfig q;
    q.rounds = c.qss_rounds;
    q.p = c.p_grid[pt.p];
    q.mode = c.qss_modes[pt.mode];
    if (q.mode != QssMode::clean && q.mode != QssMode::noisy) q.model = model;
    q.seed = derive_seed(c.seed, {stream::kQss, static_cast<std::uint64_t>(pt.mode), static_cast<std::uint64_t>(pt.p)});
    rates[static_cast<std::size_t>(k)] = failure_rate(q);
  }

  ExperimentOutput out;
  Table t{{"p", "rounds", "valid_rounds", "empirical_failure_rate", "theoretical_gamma", "mode"}, {}};
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double p = c.p_grid[points[k].p];
    const QssMode mode = c.qss_modes[points[k].mode];
    t.add_row({num(p), num(rates[k].rounds), num(rates[k].valid_rounds), rates[k].rate ? num(*rates[k].rate) : "",
               num(mode == QssMode::clean ? 0.0 : theoretical_gamma(p)), std::string(to_string(mode))});
  }
  out.tables.push_back({"qss.csv", std::move(t)});
  if (model) append_trained_model(out, c, *model);
  std::ostringstream s;
  s << "qss-sweep: " << c.qss_modes.size() << " mode(s) x " << c.p_grid.size() << " noise strengths, "
    << c.qss_rounds << " rounds each";
  out.summary = s.str();
  return out;
}

ExperimentOutput run_state_city(const ExperimentConfig& c) {
  const QaeModel model = obtain_model(c);
  const CompiledQae net(model);
  const int m = model.topology.input_size();
  const StateVector ghz = ghz_state(m);
  Rng rng = make_rng(c.seed, {stream::kEvaluation});
  const auto dim_in = Eigen::Index{1} << m;
  const auto dim_out = Eigen::Index{1} << model.topology.output_size();
  CMatrix noisy = CMatrix::Zero(dim_in, dim_in);
  CMatrix denoised = CMatrix::Zero(dim_out, dim_out);
  for (int i = 0; i < c.n_states; ++i) {
    const StateVector psi = apply_syndrome(ghz, sample_syndrome(c.channel, m, rng));
    noisy += psi.amplitudes() * psi.amplitudes().adjoint();
    denoised += net.forward(psi).matrix();
  }
  noisy /= static_cast<double>(c.n_states);
  denoised /= static_cast<double>(c.n_states);

  auto dump = [](const CMatrix& rho) {
    Table t{{"row", "col", "real", "imag"}, {}};
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
      for (Eigen::Index k = 0; k < rho.cols(); ++k) {
        t.add_row({std::to_string(r), std::to_string(k), num(rho(r, k).real()), num(rho(r, k).imag())});
      }
    }
    return t;
  };
  ExperimentOutput out;
  out.tables.push_back({"state_city_noisy.csv", dump(noisy)});
  out.tables.push_back({"state_city_denoised.csv", dump(denoised)});
  append_trained_model(out, c, model);
  const double f_in = fidelity(ghz, DensityMatrix(m, noisy));
  const double f_out = fidelity(ghz_state(model.topology.output_size()), DensityMatrix(model.topology.output_size(), denoised));
  out.summary = "state-city " + model.topology.str() + " " + channel_label(c.channel) + ": average state fidelity " +
                fixed(f_in) + " before, " + fixed(f_out) + " after denoising (" + std::to_string(c.n_states) +
                " states)";
  return out;
}

}  // namespace

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match the header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double Table::value(std::size_t row, const std::string& name) const { return std::stod(rows.at(row).at(column(name))); }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  // Shortest representation that parses back to the same double.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

const Table& ExperimentOutput::table(const std::string& file) const {
  for (const auto& t : tables) {
    if (t.file == file) return t.table;
  }
  throw std::out_of_range("experiment produced no table '" + file + "'");
}

int first_crossing(const TrainingLog& log, double threshold) {
  for (const auto& e : log) {
    if (e.train_fidelity >= threshold) return e.epoch;
  }
  return -1;
}

QaeModel obtain_model(const ExperimentConfig& c) {
  if (c.model_path) {
    if (!std::filesystem::exists(*c.model_path)) throw std::runtime_error("model file not found: " + c.model_path->string());
    QaeModel model = load_model(*c.model_path);
    if (!(model.topology == c.topology)) {
      throw std::runtime_error("model " + c.model_path->string() + " has topology " + model.topology.str() +
                               ", config says " + c.topology.str());
    }
    return model;
  }
  TrainingConfig tc = c.training;
  tc.seed = c.seed;
  return train(c.topology, c.channel, tc).model;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::train: return run_train(config);
    case ExperimentKind::evaluate_sweep: return run_evaluate_sweep(config);
    case ExperimentKind::generate: return run_generate(config);
    case ExperimentKind::gate_noise_sweep: return run_gate_noise(config);
    case ExperimentKind::qss_sweep: return run_qss(config);
    case ExperimentKind::state_city: return run_state_city(config);
  }
  throw std::logic_error("unhandled experiment kind");
}

void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& t : output.tables) {
    std::ofstream f(dir / t.file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / t.file).string());
    f << t.table.to_csv();
  }
  for (const auto& m : output.models) save_model(m.model, dir / m.file);
}

}  // namespace qae
