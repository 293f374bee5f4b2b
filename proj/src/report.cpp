#include "l2a/report.hpp"

namespace l2a {

bool Report::pass() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

Clause& Report::clause(const std::string& id) {
  for (auto& c : clauses)
    if (c.id == id) return c;
  clauses.push_back({id, true, {}});
  return clauses.back();
}

const Clause* Report::find(const std::string& id) const {
  for (const auto& c : clauses)
    if (c.id == id) return &c;
  return nullptr;
}

void Report::fail(const std::string& id, std::string where, std::string value) {
  Clause& c = clause(id);
  c.pass = false;
  c.witnesses.push_back({std::move(where), std::move(value)});
}

void Report::absorb(const Report& other, const std::string& prefix) {
  for (const auto& c : other.clauses) {
    Clause& mine = clause(prefix + "." + c.id);
    mine.pass = mine.pass && c.pass;
    mine.witnesses.insert(mine.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
  }
}

}  // namespace l2a
