#pragma once

#include "json.hpp"
#include <string>

#include "oplab/banach.hpp"
#include "oplab/genint.hpp"
#include "oplab/seqlab.hpp"
#include "oplab/subspaces.hpp"
#include "oplab/weights.hpp"
#include "oplab/xspace.hpp"

namespace oplab {

using Json = nlohmann::json;

// throws ParseError on malformed or schema-violating documents
Json parse_json(const std::string& text);

WeightSequence weight_sequence_from_json(const Json& j);
Json weight_sequence_to_json(const WeightSequence& w);

GenIntSeq genint_seq_from_json(const Json& j);
Json genint_seq_to_json(const GenIntSeq& s);

XiPoint xi_point_from_json(const Json& j);
Json xi_point_to_json(const XiPoint& p);

MatElement mat_element_from_json(const Json& j);
Json mat_element_to_json(const MatElement& x);

SubspaceFrame subspace_frame_from_json(const Json& j);
Json subspace_frame_to_json(const SubspaceFrame& f);

BanachFrame banach_frame_from_json(const Json& j);
Json banach_frame_to_json(const BanachFrame& f);

Json verdict_to_json(const EquivVerdict& v);

Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j);

}  // namespace oplab
