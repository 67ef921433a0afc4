#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "xltrace/xltrace.h"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string seed;
  std::string jobs;
  std::vector<std::string> sets;  // key=value overrides
};

int fail_cli(xlt_status status) {
  std::fprintf(stderr, "xltrace: %s: %s\n", xlt_status_name(status), xlt_last_error());
  return 1;
}

int run(const Options& options, xlt_status (*command)(const xlt_config*, char**)) {
  xlt_config* config = nullptr;
  xlt_status status = options.config_path.empty()
                          ? xlt_config_create(&config)
                          : xlt_config_load(options.config_path.c_str(), &config);
  if (status != XLT_OK) return fail_cli(status);

  auto set = [&](const std::string& key, const std::string& value) {
    if (status == XLT_OK) status = xlt_config_set(config, key.c_str(), value.c_str());
  };
  for (const std::string& entry : options.sets) {
    std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "xltrace: --set needs key=value, got '%s'\n", entry.c_str());
      xlt_config_free(config);
      return 1;
    }
    set(entry.substr(0, eq), entry.substr(eq + 1));
  }
  // Flags win over config file keys.
  if (!options.out_dir.empty()) set("out_dir", options.out_dir);
  if (!options.seed.empty()) set("seed", options.seed);
  if (!options.jobs.empty()) set("jobs", options.jobs);
  if (status != XLT_OK) {
    int code = fail_cli(status);
    xlt_config_free(config);
    return code;
  }

  char* summary = nullptr;
  status = command(config, &summary);
  xlt_config_free(config);
  if (status != XLT_OK) return fail_cli(status);
  std::fputs(summary, stdout);
  xlt_string_free(summary);
  return 0;
}

void add_common(CLI::App* sub, Options& options) {
  sub->add_option("-c,--config", options.config_path, "run configuration file");
  sub->add_option("-o,--out", options.out_dir, "output directory (overrides out_dir)");
  sub->add_option("--seed", options.seed, "master seed (overrides seed)");
  sub->add_option("-j,--jobs", options.jobs, "worker threads (overrides jobs)");
  sub->add_option("--set", options.sets, "override any config key, key=value")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recovers trace links between bilingual commits and issues"};
  app.set_version_flag("--version", xlt_version());
  app.require_subcommand(1);

  Options options;
  struct SubCommand {
    const char* name;
    const char* help;
    xlt_status (*fn)(const xlt_config*, char**);
  };
  const SubCommand commands[] = {
      {"ingest", "load a corpus and extract golden links from commit messages",
       xlt_cmd_ingest},
      {"prune", "reduce the corpus to linked, bilingual artifacts", xlt_cmd_prune},
      {"translate", "translate bilingual sentences and save the corpus",
       xlt_cmd_translate},
      {"trace", "score and rank candidate links for each model variant",
       xlt_cmd_trace},
      {"eval", "trace plus average precision per variant", xlt_cmd_eval},
      {"compare", "pairwise significance tests over per-dataset AP tables",
       xlt_cmd_compare},
  };

  xlt_status (*chosen)(const xlt_config*, char**) = nullptr;
  for (const SubCommand& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub, options);
    sub->callback([&chosen, &cmd] { chosen = cmd.fn; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(options, chosen);
}
