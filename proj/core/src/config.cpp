#include "coopgrid/config.hpp"

#include <fstream>
#include <sstream>

namespace coopgrid {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int x = std::stoi(v, &pos);
    require(pos == v.size(), key + ": not an integer: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    require(pos == v.size(), key + ": not an integer: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    require(pos == v.size(), key + ": not a number: '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  require(side >= 3, "side: lattice side must be >= 3");
  require(b >= 1.0 && b <= 2.0, "b: dilemma strength must be in [1, 2]");
  require(alpha >= 0.0 && alpha < 1.0, "alpha: memory weight must be in [0, 1)");
  require(window >= 1, "window: observation window must be >= 1");
  require(episodes >= 1, "episodes: must be >= 1");
  require(timesteps >= 1, "timesteps: must be >= 1");
  require(arenas >= 1, "arenas: must be >= 1");
  require(seeds >= 1, "seeds: must be >= 1");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma: must be in [0, 1]");
  require(base_lr > 0.0, "base_lr: must be positive");
  require(eps_dilemma_start >= 0.0 && eps_dilemma_start <= 1.0 &&
              eps_dilemma_end >= 0.0 && eps_dilemma_end <= 1.0,
          "eps_dilemma: endpoints must be in [0, 1]");
  require(eps_selection_start >= 0.0 && eps_selection_start <= 1.0 &&
              eps_selection_end >= 0.0 && eps_selection_end <= 1.0,
          "eps_selection: endpoints must be in [0, 1]");
  require(eps_duration >= 0, "eps_duration: must be >= 0");
  require(buffer_capacity >= 1, "buffer_capacity: must be >= 1");
  require(batch_size >= 1, "batch_size: must be >= 1");
  require(update_every >= 1, "update_every: must be >= 1");
  require(tau > 0.0 && tau <= 1.0, "tau: must be in (0, 1]");
  require(per_alpha >= 0.0, "per_alpha: must be >= 0");
  require(per_beta_start >= 0.0 && per_beta_end >= per_beta_start,
          "per_beta: endpoints must satisfy 0 <= start <= end");
  require(egt_k > 0.0, "egt_k: Fermi noise must be positive");
  require(stride >= 0, "stride: must be >= 0");
  require(threads >= 1, "threads: must be >= 1");
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "side" || key == "L") cfg.side = to_int(key, value);
  else if (key == "b") cfg.b = to_double(key, value);
  else if (key == "variant") {
    try {
      cfg.variant = parse_variant(value);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("variant: ") + e.what());
    }
  }
  else if (key == "alpha") cfg.alpha = to_double(key, value);
  else if (key == "window") cfg.window = to_int(key, value);
  else if (key == "episodes") cfg.episodes = to_int(key, value);
  else if (key == "timesteps") cfg.timesteps = to_int(key, value);
  else if (key == "arenas") cfg.arenas = to_int(key, value);
  else if (key == "seeds") cfg.seeds = to_int(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, value));
  else if (key == "gamma") cfg.gamma = to_double(key, value);
  else if (key == "base_lr") cfg.base_lr = to_double(key, value);
  else if (key == "lr_start") cfg.lr_start = to_double(key, value);
  else if (key == "lr_end") cfg.lr_end = to_double(key, value);
  else if (key == "eps_dilemma_start") cfg.eps_dilemma_start = to_double(key, value);
  else if (key == "eps_dilemma_end") cfg.eps_dilemma_end = to_double(key, value);
  else if (key == "eps_selection_start") cfg.eps_selection_start = to_double(key, value);
  else if (key == "eps_selection_end") cfg.eps_selection_end = to_double(key, value);
  else if (key == "eps_duration") cfg.eps_duration = to_long(key, value);
  else if (key == "buffer_capacity") cfg.buffer_capacity = to_int(key, value);
  else if (key == "batch_size") cfg.batch_size = to_int(key, value);
  else if (key == "update_every") cfg.update_every = to_int(key, value);
  else if (key == "tau") cfg.tau = to_double(key, value);
  else if (key == "per_alpha") cfg.per_alpha = to_double(key, value);
  else if (key == "per_beta_start") cfg.per_beta_start = to_double(key, value);
  else if (key == "per_beta_end") cfg.per_beta_end = to_double(key, value);
  else if (key == "egt_k") cfg.egt_k = to_double(key, value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "stride") cfg.stride = to_int(key, value);
  else if (key == "threads") cfg.threads = to_int(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "side = " << cfg.side << "\n"
      << "b = " << cfg.b << "\n"
      << "variant = " << variant_name(cfg.variant) << "\n"
      << "alpha = " << cfg.alpha << "\n"
      << "window = " << cfg.window << "\n"
      << "episodes = " << cfg.episodes << "\n"
      << "timesteps = " << cfg.timesteps << "\n"
      << "arenas = " << cfg.arenas << "\n"
      << "seeds = " << cfg.seeds << "\n"
      << "seed = " << cfg.seed << "\n"
      << "gamma = " << cfg.gamma << "\n"
      << "base_lr = " << cfg.base_lr << "\n"
      << "lr_start = " << cfg.lr_start << "\n"
      << "lr_end = " << cfg.lr_end << "\n"
      << "eps_dilemma_start = " << cfg.eps_dilemma_start << "\n"
      << "eps_dilemma_end = " << cfg.eps_dilemma_end << "\n"
      << "eps_selection_start = " << cfg.eps_selection_start << "\n"
      << "eps_selection_end = " << cfg.eps_selection_end << "\n"
      << "eps_duration = " << cfg.eps_duration << "\n"
      << "buffer_capacity = " << cfg.buffer_capacity << "\n"
      << "batch_size = " << cfg.batch_size << "\n"
      << "update_every = " << cfg.update_every << "\n"
      << "tau = " << cfg.tau << "\n"
      << "per_alpha = " << cfg.per_alpha << "\n"
      << "per_beta_start = " << cfg.per_beta_start << "\n"
      << "per_beta_end = " << cfg.per_beta_end << "\n"
      << "egt_k = " << cfg.egt_k << "\n"
      << "out_dir = " << cfg.out_dir << "\n"
      << "stride = " << cfg.stride << "\n"
      << "threads = " << cfg.threads << "\n";
  return out.str();
}

}  // namespace coopgrid
