// Command-line front end. Flags mirror the config-file keys; a flag given on
// the command line overrides the same key from --config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "twoadic/twoadic.h"

namespace {

int report_error(const char* what, twoadic_status s) {
  const std::string msg = twoadic_last_error();
  std::cerr << "twoadic_verify: " << what << ": " << (msg.empty() ? twoadic_status_name(s) : msg.c_str()) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive and sampled checks of SL2 filtration subgroups over 2-adic fields"};
  app.set_version_flag("--version", std::string(twoadic_version()));

  std::string config_path;
  app.add_option("--config", config_path, "key = value file; flags override it")->check(CLI::ExistingFile);

  // key, help
  const std::vector<std::pair<std::string, std::string>> keys{
      {"e", "ramification index"},
      {"eisenstein", "Eisenstein coefficients c_0,...,c_e (constant first)"},
      {"n", "n or range a..b"},
      {"m", "m or range a..b"},
      {"l", "l or range a..b (default: same as m)"},
      {"precision", "working precision override (may only raise the minimum)"},
      {"mode", "exhaustive | sampled"},
      {"seed", "seed for sampled sweeps"},
      {"samples", "sample count for sampled sweeps"},
      {"suite", "comma list of normality,pairing,theta,duality,projline or all"},
      {"format", "text | json"},
      {"output", "report path (default stdout)"},
      {"workers", "concurrent checks (capped by TWOADIC_WORKERS)"},
      {"timing", "record wall-time per check (true/false)"},
      {"cap", "enumeration cap"},
  };
  std::vector<std::optional<std::string>> values(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto* opt = app.add_option("--" + keys[i].first, values[i], keys[i].second);
    opt->allow_extra_args(false);
  }

  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str() + "\n";
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (values[i]) text += keys[i].first + " = " + *values[i] + "\n";
  // No suite anywhere means everything.
  if (text.find("suite") == std::string::npos) text += "suite = all\n";

  twoadic_config* cfg = nullptr;
  twoadic_status s = twoadic_config_from_text(text.c_str(), &cfg);
  if (s != TWOADIC_OK) return report_error("config", s);

  twoadic_report* rep = nullptr;
  s = twoadic_run(cfg, &rep);
  if (s != TWOADIC_OK) {
    twoadic_config_free(cfg);
    return report_error("run", s);
  }
  char* out = nullptr;
  s = twoadic_report_emit(rep, nullptr, &out);
  if (s != TWOADIC_OK) {
    twoadic_report_free(rep);
    twoadic_config_free(cfg);
    return report_error("emit", s);
  }

  int rc = twoadic_report_exit_code(rep);
  const std::string path = twoadic_config_output(cfg);
  if (path.empty()) {
    std::fputs(out, stdout);
  } else {
    std::ofstream f(path, std::ios::binary);
    f << out;
    if (!f) {
      std::cerr << "twoadic_verify: cannot write " << path << "\n";
      rc = 2;
    }
  }
  twoadic_string_free(out);
  twoadic_report_free(rep);
  twoadic_config_free(cfg);
  return rc;
}
