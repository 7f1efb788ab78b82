#ifndef FUNRING_SESSION_HPP
#define FUNRING_SESSION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "funring/applications.hpp"

namespace funring {

struct SessionError {
  std::string message;
  int line = 0;
  int column = 0;
  std::string what() const {
    return "line " + std::to_string(line) + ":" + std::to_string(column) +
           ": " + message;
  }
};

struct ResultDoc {
  enum class Status { Ok, Indeterminate, Error };
  std::string command;
  std::vector<std::pair<std::string, std::string>> fields;
  Status status = Status::Ok;
};

struct Command {
  std::string name;
  std::vector<std::string> args;
  int line = 0;
};

// A parsed session: one ring declaration, named polynomial lists, settings
// and a command list.
class Session {
 public:
  static Session parse(const std::string& text);

  std::vector<ResultDoc> run();

  const FunctionRing::Ptr& ring() const { return ring_; }
  const std::map<std::string, std::vector<Poly>>& lists() const {
    return lists_;
  }

  CompletionBudget budget;
  std::uint64_t seed = 1;
  bool two_sided = false;

 private:
  ResultDoc run_command(const Command& cmd);
  Poly parse_poly_checked(const std::string& text, int line) const;
  const std::vector<Poly>& list_arg(const Command& cmd, std::size_t i) const;
  IdealHandle handle_for(const std::vector<Poly>& gens) const;

  FunctionRing::Ptr ring_;
  std::map<std::string, std::vector<Poly>> lists_;
  std::vector<Command> commands_;
};

// canonical rendering; machine mode is line-delimited key=value records
std::string format_output(const std::vector<ResultDoc>& docs, bool machine);

// parses one machine-mode record back into its fields
std::vector<std::pair<std::string, std::string>> parse_machine_record(
    const std::string& line);

// 0: all definite; 2: some indeterminate; 1: error
int exit_code(const std::vector<ResultDoc>& docs);

// polynomial text parser against a ring (used by the session and tests)
Poly parse_poly(const std::string& text, const FunctionRing::Ptr& ring);

}  // namespace funring

#endif
