#pragma once

#include <string>
#include <vector>

namespace l2a {

struct Witness {
  std::string where;
  std::string value;
};

struct Clause {
  std::string id;
  bool pass = true;
  std::vector<Witness> witnesses;
};

// Result of one checker: named clauses, each with the offending terms.
struct Report {
  std::string check;
  std::vector<Clause> clauses;

  bool pass() const;
  Clause& clause(const std::string& id);
  const Clause* find(const std::string& id) const;
  void fail(const std::string& id, std::string where, std::string value);
  // prefix every clause id of other with prefix + "." and append
  void absorb(const Report& other, const std::string& prefix);
};

}  // namespace l2a
