#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btb/homology.hpp"
#include "json.hpp"

namespace btb::io {

using Json = nlohmann::ordered_json;

/// Field elements are written as their packed index sum c_i p^i.
Json poly_to_json(const Poly& f);
Poly poly_from_json(const Field& F, const Json& j);

/// Parses "t^2+t+1", "2t + 1", "t", or a coefficient list "[1,0,1]" / "1,0,1"
/// (ascending degree). Coefficients are packed field indices. Throws
/// UsageError on malformed input.
Poly parse_poly(const Field& F, const std::string& s);

Json ratk_to_json(const RatK& x);  // {num, den}
RatK ratk_from_json(const Field& F, const Json& j);  // also accepts a bare integer
Json kmatrix_to_json(const KMatrix& m);
KMatrix kmatrix_from_json(const Field& F, const Json& j);
Json polymatrix_to_json(const PolyMatrix& m);
PolyMatrix polymatrix_from_json(const Field& F, const Json& j);

/// {diag_exponents: [a_1..a_r], subdiagonal: [[...], ...]}: row i holds i
/// coefficient lists, entry (i, j) listed from exponent a_i - 1 downward to
/// its lowest nonzero term.
Json lattice_to_json(const Lattice& L);
/// Throws UsageError unless the data is already in Hermite form.
Lattice lattice_from_json(const Field& F, const Json& j);
Json class_to_json(const LatticeClass& c);
/// As lattice_from_json, plus min a_i = 0.
LatticeClass class_from_json(const Field& F, const Json& j);

struct BallParams {
  int p = 0;
  int n = 1;
  std::optional<std::vector<int>> modulus;  // only when overridden
  std::optional<Poly> ideal;
};

Json ball_to_json(const Ball& b, const BallParams& params);
struct ImportedBall {
  Ball ball;
  BallParams params;
};
ImportedBall ball_from_json(const Json& j);

Json stabilizer_to_json(const StabilizerSpace& H);
Json subspace_to_json(const SubspaceK& W);
SubspaceK subspace_from_json(const Field& F, const Json& j);
Json group_elt_to_json(const GroupElt& g);
Json orbit_witness_to_json(const std::optional<OrbitWitness>& w, int deg_bound);
/// {degree: {d: {betti, torsion}}, meta: {radius, level, augmented, ...}}.
Json homology_to_json(const HomologyResult& h);
Json components_to_json(const ComponentReport& rep);

}  // namespace btb::io
