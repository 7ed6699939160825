#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopspace/jobs.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw loopspace::validation_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const loopspace::JobResult& r) {
  std::fputs(r.output.c_str(), stdout);
  std::fputs(r.error.c_str(), stderr);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loopspace: loop space decompositions of capped complexes"};
  app.require_subcommand(0, 1);

  std::string input, field = "q", format = "text", batch_file;
  int trunc = 16, cap_degree = -1;
  long long kval = 0;
  bool timestamps = false;

  struct CommandDoc {
    const char* name;
    const char* help;
  };
  const std::vector<CommandDoc> commands = {
      {"homology", "homology of a space expression"},
      {"series", "reduced Poincare series of a space over a field"},
      {"loop-series", "Poincare series of the loop space"},
      {"decompose", "loop space decomposition of a capped complex"},
      {"loop-homology", "loop homology presentation (|k| = 1, co-H cap)"},
      {"inertness", "inertness verdict for the attaching degree k"},
      {"hyperbolicity", "hyperbolicity verdict for the attaching degree k"},
      {"check-pair", "spherical-pair criterion on a cohomology ring"},
      {"skeleton", "wedge form of a skeleton from homology data"},
      {"split", "summand table of A |x Loop(S^m x S^nm)"},
      {"verify", "two-path series check of the decomposition"},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--input", input, "payload JSON file (- or omitted: stdin)");
    sub->add_option("--trunc", trunc, "truncation degree (default 16)");
    sub->add_option("--field", field,
                    "coefficients: q, fp:<p>, z, z-away:<p,...> (default q)");
    sub->add_option("--format", format, "text, json, or csv (default text)");
    sub->add_option("--cap-degree", cap_degree,
                    "raise the quotient-dimension degree caps");
    sub->add_flag("--timestamps", timestamps,
                  "embed a generation timestamp (off by default)");
    if (std::string(cmd.name) == "inertness" ||
        std::string(cmd.name) == "hyperbolicity")
      sub->add_option("-k,--cap", kval, "attaching degree, instead of --input");
    subs[cmd.name] = sub;
  }
  CLI::App* batch =
      app.add_subcommand("batch", "run a JSON array of job documents");
  batch->add_option("file", batch_file, "jobs file (- for stdin)")->required();

  CLI11_PARSE(app, argc, argv);

  if (batch->parsed()) {
    std::string text;
    try {
      text = read_all(batch_file);
    } catch (const loopspace::error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return e.exit_code();
    }
    return emit(loopspace::run_job_text(text));
  }

  for (const auto& cmd : commands) {
    CLI::App* sub = subs[cmd.name];
    if (!sub->parsed()) continue;
    loopspace::json doc;
    doc["command"] = cmd.name;
    try {
      bool k_given = (std::string(cmd.name) == "inertness" ||
                      std::string(cmd.name) == "hyperbolicity") &&
                     sub->count("-k") > 0;
      if (k_given)
        doc["payload"] = loopspace::json{{"k", kval}};
      else
        doc["payload"] = loopspace::json::parse(read_all(input));
    } catch (const loopspace::json::parse_error& e) {
      std::fprintf(stderr, "error: JSON parse failure: %s\n", e.what());
      return 1;
    } catch (const loopspace::error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return e.exit_code();
    }
    loopspace::json options;
    options["trunc"] = trunc;
    options["field"] = field;
    options["format"] = format;
    if (cap_degree >= 1) options["cap_degree"] = cap_degree;
    if (timestamps) options["timestamps"] = true;
    doc["options"] = options;
    return emit(loopspace::run_job(doc));
  }

  std::fputs(app.help().c_str(), stdout);
  return 0;
}
