// Command line front end: reads a JSON job document, runs it, prints the
// report to stdout. Diagnostics go to stderr. Exit codes: 0 success, 2
// identity violation, 1 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "maslov/job.hpp"

namespace {

std::string read_input(const std::string& source) {
  std::ostringstream buffer;
  if (source == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream file(source, std::ios::binary);
    if (!file)
      throw maslov::Error(maslov::Error::Code::kIo, "cannot open '" + source + "'");
    buffer << file.rdbuf();
  }
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov-type indices of Lagrangian paths and periodic orbits"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string input = "-";
  long long seed = -1;
  int steps = 0;
  double structural = 0.0;
  std::string format = "json";
  app.add_option("--input", input, "Job document, or - for stdin")->capture_default_str();
  app.add_option("--seed", seed, "Override the document seed")->check(CLI::NonNegativeNumber);
  app.add_option("--steps", steps, "Override the sampling density")
      ->check(CLI::Range(2, 65536));
  app.add_option("--tol", structural, "Override the structural tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report rendering")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> kCommands = {
      {"leray", "Leray index of two Lagrangian lifts"},
      {"signature", "Kashiwara signature of a Lagrangian triple"},
      {"inert", "Inertia index of a Lagrangian triple"},
      {"maslov-path", "Maslov index of a symplectic path"},
      {"monodromy", "Monodromy splitting of a periodic flow"},
      {"change-origin", "Index bookkeeping under a moved orbit origin"},
      {"verify", "Seeded self-check battery"},
  };
  for (const auto& entry : kCommands) {
    CLI::App* sub = app.add_subcommand(entry.first, entry.second);
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    maslov::Json document = maslov::Json::parse(read_input(input));
    std::string chosen;
    for (const CLI::App* sub : app.get_subcommands())
      chosen = sub->get_name();
    if (!chosen.empty()) {
      if (document.is_object() && document.contains("command")) {
        if (!document.at("command").is_string() ||
            document.at("command").get<std::string>() != chosen)
          throw maslov::Error(maslov::Error::Code::kSchema,
                              "$.command: document disagrees with the subcommand");
      } else if (document.is_object()) {
        document["command"] = chosen;
      }
    }
    maslov::JobSpec spec = maslov::parse_job(document);
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
    if (steps > 0) spec.steps = steps;
    if (structural > 0.0) spec.tol.structural = structural;
    spec.format = format;

    maslov::JobOutcome outcome = maslov::run_job(spec);
    if (spec.format == "text")
      std::cout << maslov::render_text(outcome.report);
    else
      std::cout << outcome.report.dump(2) << "\n";
    if (outcome.exit_code != 0)
      std::cerr << "identity violation: see the checks block of the report\n";
    return outcome.exit_code;
  } catch (const maslov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return maslov::exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
