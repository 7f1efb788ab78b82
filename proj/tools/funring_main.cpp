#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "funring/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Groebner bases in function rings"};
  std::string session_file;
  bool machine = false;
  long budget = -1;
  long seed = -1;
  app.add_option("--session", session_file,
                 "session file (stdin when omitted)");
  app.add_flag("--machine", machine, "line-delimited machine output");
  app.add_option("--budget", budget, "completion work-item budget");
  app.add_option("--seed", seed, "sampling seed");
  CLI11_PARSE(app, argc, argv);

  if (const char* v = std::getenv("FUNRING_BUDGET"); v && budget < 0)
    budget = std::atol(v);
  if (const char* v = std::getenv("FUNRING_SEED"); v && seed < 0)
    seed = std::atol(v);

  std::string text;
  if (session_file.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(session_file);
    if (!in) {
      std::cerr << "cannot open " << session_file << "\n";
      return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  try {
    auto session = funring::Session::parse(text);
    if (budget >= 0) session.budget.work_items = budget;
    if (seed >= 0) session.seed = seed;
    auto docs = session.run();
    std::cout << funring::format_output(docs, machine);
    return funring::exit_code(docs);
  } catch (const funring::SessionError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
