#ifndef SUPERQUOT_CLI_HPP
#define SUPERQUOT_CLI_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superquot/hopf.hpp"

namespace sq {

struct ParseError : std::runtime_error {
  int line = 0, col = 0;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

/// In-memory session model: named hopf blocks plus named sub blocks, possibly
/// accumulated from several presentation files. A sub block may only refer to
/// a hopf that was parsed before it.
class Model {
 public:
  explicit Model(const Field& f) : field_(f) {}

  struct Sub {
    std::string name;
    std::string parent;
    std::vector<std::string> kill_src;  // canonical source of each ideal generator
    std::vector<SuperElement> ideal;    // resolved in the parent's presentation
  };

  const Field& field() const { return field_; }
  const HopfSuperalgebra* find_hopf(const std::string& name) const;
  const Sub* find_sub(const std::string& name) const;
  const std::vector<std::string>& hopf_order() const { return hopf_order_; }
  const std::vector<Sub>& subs() const { return subs_; }
  bool antipode_auto(const std::string& hopf) const;
  std::optional<int> default_bound() const { return default_bound_; }

  // used by the parser
  void add_hopf(HopfSuperalgebra h, bool antipode_auto);
  void add_sub(Sub s);
  void set_default_bound(int b) { default_bound_ = b; }

 private:
  Field field_;
  std::vector<std::string> hopf_order_;
  std::vector<HopfSuperalgebra> hopfs_;
  std::vector<bool> auto_antipode_;
  std::vector<Sub> subs_;
  std::optional<int> default_bound_;
};

/// Parse one presentation file into the model (which may already hold blocks
/// from earlier files). Errors carry line/column positions.
void parse_into(Model& m, const std::string& text);
Model parse_presentation(const std::string& text, const Field& f);

/// Canonical printer; parse(print(parse(text))) == parse(text).
std::string print_presentation(const Model& m);

/// Parse a single expression in the given presentation (used for --chart and
/// by the sub-block resolver).
SuperElement parse_element(const SuperPresentation& P, const std::string& text);

/// One CLI invocation, fully in-process for testability. args excludes the
/// program name. The output is the complete text that main() prints.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace sq

#endif
