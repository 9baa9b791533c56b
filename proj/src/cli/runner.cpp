#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "homog/analysis.hpp"
#include "homog/cli.hpp"
#include "homog/errors.hpp"
#include "homog/exactsim.hpp"
#include "homog/kernels.hpp"
#include "homog/metrics.hpp"
#include "homog/selftest.hpp"
#include "json.hpp"

#ifndef HOMOG_VERSION
#define HOMOG_VERSION "0.0.0"
#endif

namespace homog::cli {

namespace {

using Rows = std::vector<std::pair<RowKey, std::vector<Cell>>>;
using Task = std::function<Rows()>;

const std::vector<std::string> kBase{"engine", "direction", "eta", "N", "n", "epsilon", "log_delta", "R"};

int direction_order(TaskDirection d) { return d == TaskDirection::pure_to_mixed ? 0 : 1; }

bool within(const std::optional<IntRange>& r, int v) { return !r || (v >= r->lo && v <= r->hi); }

RowKey key_of(const MetricsRecord& r) {
  return {direction_order(r.direction), r.eta, r.N, r.n, r.engine == Engine::approx ? 0 : 1};
}

std::vector<Cell> base_cells(const MetricsRecord& r) {
  r.validate(tol::kInvariant);
  return {std::string(engine_name(r.engine)), std::string(direction_name(r.direction)), r.eta,
          static_cast<long long>(r.N), static_cast<long long>(r.n), r.epsilon, r.log_delta, r.R};
}

std::vector<Cell> blank_metrics(std::string direction, double eta, int N, int n) {
  return {std::string("approx"), std::move(direction), eta, static_cast<long long>(N), static_cast<long long>(n),
          std::monostate{}, std::monostate{}, std::monostate{}};
}

std::vector<std::string> with_extra(std::initializer_list<const char*> extra) {
  std::vector<std::string> cols = kBase;
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

/// Runs tasks on `jobs` threads; rethrows the lowest-index failure.
Rows execute(const std::vector<Task>& tasks, int jobs) {
  std::vector<Rows> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(jobs, static_cast<int>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Rows all;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(all));
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return all;
}

std::vector<Task> surface_tasks(const RunConfig& cfg, bool approx, bool exact) {
  std::vector<Task> tasks;
  for (TaskDirection d : cfg.directions) {
    for (double eta : cfg.etas) {
      if (approx) {
        tasks.emplace_back([&cfg, d, eta] {
          Rows rows;
          for (const MetricsRecord& r : metrics_surface(d, Coupling(eta), cfg.N->hi, cfg.n->hi, cfg.caps)) {
            if (within(cfg.N, r.N) && within(cfg.n, r.n)) rows.emplace_back(key_of(r), base_cells(r));
          }
          return rows;
        });
      }
      if (exact) {
        for (int N = cfg.N->lo; N <= cfg.N->hi; ++N) {
          tasks.emplace_back([&cfg, d, eta, N] {
            Rows rows;
            for (const MetricsRecord& r : exact_metrics(d, N, cfg.n->hi, Coupling(eta), cfg.caps)) {
              if (within(cfg.n, r.n)) rows.emplace_back(key_of(r), base_cells(r));
            }
            return rows;
          });
        }
      }
    }
  }
  return tasks;
}

Table build(const RunConfig& cfg) {
  Table table;
  std::vector<Task> tasks;
  switch (cfg.command) {
    case Command::surface:
    case Command::exact: {
      const bool exact = cfg.command == Command::exact || cfg.engine != EngineChoice::approx;
      const bool approx = cfg.command == Command::surface && cfg.engine != EngineChoice::exact;
      table.columns = kBase;
      tasks = surface_tasks(cfg, approx, exact);
      break;
    }
    case Command::compare:
      table.columns = with_extra({"epsilon_exact", "log_delta_exact", "R_exact", "rel_gap"});
      for (TaskDirection d : cfg.directions) {
        for (double eta : cfg.etas) {
          tasks.emplace_back([&cfg, d, eta] {
            Rows rows;
            for (const EngineComparison& c : compare_engines(d, Coupling(eta), cfg.k.value_or(3), cfg.caps)) {
              c.exact.validate(tol::kInvariant);
              auto cells = base_cells(c.approx);
              cells.insert(cells.end(), {c.exact.epsilon, c.exact.log_delta, c.exact.R, c.relative_gap()});
              rows.emplace_back(key_of(c.approx), std::move(cells));
            }
            return rows;
          });
        }
      }
      break;
    case Command::entropy:
      table.columns = with_extra({"S_tot"});
      for (double eta : cfg.etas) {
        tasks.emplace_back([&cfg, eta] {
          Rows rows;
          const EntropySurface s = entropy_surface(Coupling(eta), cfg.N->hi, cfg.n->hi, cfg.caps);
          for (int N = cfg.N->lo; N <= cfg.N->hi; ++N) {
            for (int n = cfg.n->lo; n <= cfg.n->hi; ++n) {
              auto cells = blank_metrics("both", eta, N, n);
              cells.emplace_back(s.at(N, n));
              rows.emplace_back(RowKey{2, eta, N, n, 0}, std::move(cells));
            }
          }
          return rows;
        });
      }
      break;
    case Command::resources:
      table.columns = with_extra({"N_min"});
      for (TaskDirection d : cfg.directions) {
        for (double eta : cfg.etas) {
          tasks.emplace_back([&cfg, d, eta] {
            Rows rows;
            const Coupling c(eta);
            const ResourceCurve curve = resource_curve(d, c, *cfg.epsilon_star, cfg.n->hi, cfg.caps);
            for (const auto& [n, search] : curve.points) {
              if (!within(cfg.n, n)) continue;
              const RowKey key{direction_order(d), eta, 0, n, 0};
              if (!search.N_min) {
                auto cells = blank_metrics(std::string(direction_name(d)), eta, 0, n);
                cells[3] = std::monostate{};
                cells.emplace_back(std::monostate{});
                rows.emplace_back(key, std::move(cells));
                continue;
              }
              const int N = *search.N_min;
              auto cells = base_cells(relative_deterioration(run_protocol(d, N, n, c, cfg.caps)));
              cells.emplace_back(static_cast<long long>(N));
              rows.emplace_back(key, std::move(cells));
            }
            return rows;
          });
        }
      }
      break;
    case Command::lifetime:
      table.columns = with_extra({"lifetime", "n_cap"});
      for (TaskDirection d : cfg.directions) {
        for (double eta : cfg.etas) {
          for (int N = cfg.N->lo; N <= cfg.N->hi; ++N) {
            tasks.emplace_back([&cfg, d, eta, N] {
              const Coupling c(eta);
              const int cap = cfg.n_cap.value_or(
                  static_cast<int>(std::min<std::size_t>(cfg.caps.grid / static_cast<std::size_t>(N), 1'000'000'000)));
              const int life = lifetime(d, c, *cfg.epsilon_star, N, cfg.caps, cap);
              std::vector<Cell> cells;
              if (life >= 1) {
                cells = base_cells(relative_deterioration(run_protocol(d, N, life, c, cfg.caps)));
              } else {
                cells = blank_metrics(std::string(direction_name(d)), eta, N, 0);
              }
              cells.insert(cells.end(), {static_cast<long long>(life), static_cast<long long>(cap)});
              return Rows{{RowKey{direction_order(d), eta, N, life, 0}, std::move(cells)}};
            });
          }
        }
      }
      break;
    case Command::classify:
      table.columns = with_extra({"verdict"});
      for (TaskDirection d : cfg.directions) {
        for (double eta : cfg.etas) {
          tasks.emplace_back([&cfg, d, eta] {
            const int k_max = cfg.k.value_or(60);
            const Coupling c(eta);
            const ProtocolTrace trace = run_protocol(d, k_max, k_max, c, cfg.caps);
            std::vector<MetricsRecord> records;
            std::vector<DiagonalPoint> series;
            for (int k = 1; k <= k_max; ++k) {
              records.push_back(relative_deterioration(trace, k, k));
              series.push_back({k, records.back().log_R});
            }
            const std::string verdict(verdict_name(classify_possibility(series)));
            Rows rows;
            for (const MetricsRecord& r : records) {
              auto cells = base_cells(r);
              cells.emplace_back(verdict);
              rows.emplace_back(key_of(r), std::move(cells));
            }
            return rows;
          });
        }
      }
      break;
    case Command::selftest:
      throw ArgumentError("selftest produces no table");
  }
  table.rows = execute(tasks, cfg.jobs);
  return table;
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return nullptr;
  if (const auto* v = std::get_if<long long>(&c)) return *v;
  if (const auto* v = std::get_if<double>(&c)) {
    if (std::isfinite(*v)) return *v;
    return format_real(*v);
  }
  return std::get<std::string>(c);
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15U]; }

}  // namespace

Table evaluate(const RunConfig& config) {
  config.validate();
  return build(config);
}

std::vector<std::pair<std::string, std::string>> metadata(const RunConfig& config) {
  std::string hash(16, '0');
  const std::uint64_t h = config.hash();
  for (int i = 0; i < 16; ++i) hash[i] = hex_digit(static_cast<unsigned>(h >> (60 - 4 * i)));
  return {
      {"version", HOMOG_VERSION},
      {"command", std::string(command_name(config.command))},
      {"config", config.canonical()},
      {"config_hash", "fnv1a64:" + hash},
      {"tol_invariant", format_real(tol::kInvariant)},
      {"tol_identity", format_real(tol::kIdentity)},
      {"tol_trend_slack", format_real(tol::kTrendSlack)},
      {"tol_entropy_eigen_floor", format_real(tol::kEntropyEigenFloor)},
      {"kernel", std::string(isa_name(kernels::active().isa))},
  };
}

void write_csv(const Table& table, const RunConfig& config, std::ostream& out) {
  for (const auto& [k, v] : metadata(config)) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& [key, cells] : table.rows) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cell_text(cells[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [key, cells] : table.rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) row[table.columns[i]] = cell_json(cells[i]);
    rows.push_back(std::move(row));
  }
  out << rows.dump(1) << '\n';
}

void write_json_metadata(const RunConfig& config, std::ostream& out) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata(config)) meta[k] = v;
  out << meta.dump() << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == Command::selftest) {
    bool all = true;
    for (const selftest::Criterion& c : selftest::criteria()) {
      const selftest::Result r = selftest::run(c);
      out << r.line() << '\n';
      all = all && r.passed();
    }
    return all ? 0 : 4;
  }

  const Table table = evaluate(config);
  const auto emit = [&](std::ostream& os) {
    if (config.format == Format::csv) {
      write_csv(table, config, os);
    } else {
      write_json(table, os);
    }
  };
  if (config.output.empty()) {
    if (config.format == Format::json) write_json_metadata(config, err);
    emit(out);
    return 0;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw ArgumentError("cannot open output file " + config.output);
  emit(file);
  if (config.format == Format::json) {
    std::ofstream meta(config.output + ".meta.json", std::ios::binary);
    if (!meta) throw ArgumentError("cannot open metadata file " + config.output + ".meta.json");
    write_json_metadata(config, meta);
  }
  return 0;
}

}  // namespace homog::cli
