#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "homog/cli.hpp"
#include "homog/errors.hpp"

namespace homog::cli {

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::surface, "surface"},     {Command::exact, "exact"},         {Command::compare, "compare"},
    {Command::entropy, "entropy"},     {Command::resources, "resources"}, {Command::lifetime, "lifetime"},
    {Command::classify, "classify"},   {Command::selftest, "selftest"},
};

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ArgumentError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

void check_range(const std::optional<IntRange>& r, std::string_view name, int min_lo, bool required) {
  if (!r) {
    if (required) throw ArgumentError("--" + std::string(name) + " is required for this command");
    return;
  }
  if (r->lo < min_lo || r->hi < r->lo) {
    throw ArgumentError("--" + std::string(name) + " range " + format_range(*r) + " is empty or below " +
                        std::to_string(min_lo));
  }
}

std::string engine_text(EngineChoice e) {
  switch (e) {
    case EngineChoice::approx:
      return "approx";
    case EngineChoice::exact:
      return "exact";
    case EngineChoice::both:
      return "both";
  }
  return "approx";
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "surface";
}

IntRange parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int v = parse_int(text, "range");
    return {v, v};
  }
  return {parse_int(text.substr(0, dots), "range"), parse_int(text.substr(dots + 2), "range")};
}

std::string format_range(const IntRange& r) { return std::to_string(r.lo) + ".." + std::to_string(r.hi); }

void RunConfig::validate() const {
  if (command == Command::selftest) return;
  if (jobs < 1) throw ArgumentError("--jobs must be >= 1");
  if (caps.grid < 1 || caps.exact_qubits < 1) throw ArgumentError("caps must be positive");
  if (directions.empty()) throw ArgumentError("no direction given");
  if (etas.empty()) throw ArgumentError("--eta is required");
  for (double eta : etas) {
    if (!(eta > 0.0 && eta <= std::numbers::pi / 2)) {
      throw ArgumentError("eta = " + format_real(eta) + " outside (0, pi/2]");
    }
  }
  const bool needs_eps = command == Command::resources || command == Command::lifetime;
  if (needs_eps && !epsilon_star) throw ArgumentError("--eps is required for this command");
  if (epsilon_star && !(*epsilon_star > 0.0 && *epsilon_star < 0.5)) {
    throw ArgumentError("--eps must lie in (0, 1/2)");
  }
  if (n_cap && *n_cap < 1) throw ArgumentError("--n-cap must be >= 1");

  const auto grid = [&](long long a, long long b) {
    if (a * b > static_cast<long long>(caps.grid)) {
      throw ResourceError("grid " + std::to_string(a) + " x " + std::to_string(b) + " exceeds grid cap " +
                          std::to_string(caps.grid));
    }
  };
  const auto exact_cap = [&](int qubits) {
    if (qubits > caps.exact_qubits) {
      throw ResourceError("exact engine with N = " + std::to_string(qubits) + " exceeds exact cap " +
                          std::to_string(caps.exact_qubits));
    }
  };

  switch (command) {
    case Command::surface:
    case Command::exact:
      check_range(N, "N", 1, true);
      check_range(n, "n", 1, true);
      grid(N->hi, n->hi);
      if (command == Command::exact || engine != EngineChoice::approx) exact_cap(N->hi);
      break;
    case Command::entropy:
      check_range(N, "N", 1, true);
      check_range(n, "n", 0, true);
      grid(N->hi, std::max(n->hi, 1));
      break;
    case Command::resources:
      check_range(n, "n", 1, true);
      break;
    case Command::lifetime:
      check_range(N, "N", 1, true);
      break;
    case Command::compare:
      if (k.value_or(3) < 1) throw ArgumentError("--k must be >= 1");
      exact_cap(k.value_or(3));
      break;
    case Command::classify:
      if (k.value_or(60) < 10) throw ArgumentError("--k must be >= 10 for classify");
      grid(k.value_or(60), k.value_or(60));
      break;
    case Command::selftest:
      break;
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "command=" << command_name(command) << ";direction=";
  for (std::size_t i = 0; i < directions.size(); ++i) os << (i ? "," : "") << direction_name(directions[i]);
  os << ";eta=";
  for (std::size_t i = 0; i < etas.size(); ++i) os << (i ? "," : "") << format_real(etas[i]);
  os << ";N=" << (N ? format_range(*N) : "") << ";n=" << (n ? format_range(*n) : "")
     << ";k=" << (k ? std::to_string(*k) : "") << ";eps=" << (epsilon_star ? format_real(*epsilon_star) : "")
     << ";n_cap=" << (n_cap ? std::to_string(*n_cap) : "") << ";engine=" << engine_text(engine)
     << ";format=" << (format == Format::csv ? "csv" : "json") << ";grid_cap=" << caps.grid
     << ";exact_cap=" << caps.exact_qubits;
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum homogenizer numerical lab", "homog"};
  app.set_config("--config", "", "flat key = value file; keys are long flag names, flags win");
  app.require_subcommand(1);

  std::string direction = "both";
  std::vector<double> etas;
  std::string N_text, n_text;
  std::optional<int> k, n_cap;
  std::optional<double> eps;
  std::string engine = "approx";
  std::string format = "csv";
  RunConfig config;

  app.add_option("--direction", direction, "p2m, m2p or both")
      ->check(CLI::IsMember({"p2m", "m2p", "both"}))
      ->capture_default_str();
  app.add_option("--eta", etas, "coupling strength(s), comma separated")->delimiter(',');
  app.add_option("--N", N_text, "reservoir size range a..b");
  app.add_option("--n", n_text, "iteration range a..b");
  app.add_option("--k", k, "diagonal length (compare, classify)");
  app.add_option("--eps", eps, "accuracy threshold epsilon* (resources, lifetime)");
  app.add_option("--n-cap", n_cap, "lifetime search limit");
  app.add_option("--engine", engine, "approx, exact or both")
      ->check(CLI::IsMember({"approx", "exact", "both"}))
      ->capture_default_str();
  app.add_option("--output,-o", config.output, "output path (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--jobs,-j", config.jobs, "worker threads")->capture_default_str();
  app.add_option("--grid-cap", config.caps.grid, "max N*n for product-state sweeps")->capture_default_str();
  app.add_option("--exact-cap", config.caps.exact_qubits, "max reservoir size for the exact engine")
      ->capture_default_str();

  for (const auto& [cmd, name] : kCommands) {
    auto* sub = app.add_subcommand(std::string(name));
    sub->fallthrough();
    sub->callback([&config, c = cmd] { config.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (direction == "p2m") config.directions = {TaskDirection::pure_to_mixed};
    if (direction == "m2p") config.directions = {TaskDirection::mixed_to_pure};
    config.etas = etas;
    if (!N_text.empty()) config.N = parse_range(N_text);
    if (!n_text.empty()) config.n = parse_range(n_text);
    config.k = k;
    config.n_cap = n_cap;
    config.epsilon_star = eps;
    config.engine = engine == "exact" ? EngineChoice::exact
                    : engine == "both" ? EngineChoice::both
                                       : EngineChoice::approx;
    config.format = format == "json" ? Format::json : Format::csv;
    config.validate();
    return run(config, out, err);
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "invariant error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace homog::cli
