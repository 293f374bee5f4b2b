#pragma once

#include "l2a/lie2.hpp"
#include "l2a/poisson.hpp"
#include "l2a/report.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2a {

using Json = nlohmann::ordered_json;

// Bad input; pointer is a JSON pointer into the offending document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string pointer, const std::string& msg)
      : std::runtime_error((pointer.empty() ? "/" : pointer) + ": " + msg), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct RunOptions {
  unsigned long seed = 0;
  int mutations = 0;
  int cutoff = 4;
};

// A structure file: split Lie 2-algebroid data with TM-connections, an optional
// Poisson bracket on its atoms, and default options.
struct StructureFile {
  SplitLie2Data data;
  std::optional<GradedPoissonData> poisson;
  bool symplectic = false;  // declared symplectic: symplectic_check is run
  RunOptions options;
};

// Layout:
//   name, base_dim, bundles [{name: "Q", degree: 1, rank}, {name: "B*", degree: 2, rank}],
//   Q {anchor[a][i], bracket [{a, b, value[c]}] (1-based, a < b)},
//   ell[mu][c], nabla[a][mu][nu], omega [{args [a,b,c], value[mu]}],
//   connections {Q {christoffels[i][a][c]}, Bdual {christoffels[i][mu][nu]}},
//   poisson {degree, symplectic, brackets [{a, b, value}]} with atom names,
//   options {seed, mutations, cutoff}
// Every polynomial is a string in x1..xm.
StructureFile structure_from_json(const Json& j);
Json structure_to_json(const StructureFile& s);
StructureFile load_structure_file(const std::string& path);

Json report_to_json(const Report& r);

// FX-ABELIAN, FX-AFF1DER, FX-STRING-SO3, FX-TANGENT-R2, FX-SO3-PAIR
const std::vector<std::string>& fixture_names();
// accepts the fixture name or its file stem (fx_string_so3)
StructureFile named_fixture(const std::string& name);
std::string fixture_file_stem(const std::string& name);

}  // namespace l2a
