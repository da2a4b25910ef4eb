#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "kb/groupoid.hpp"
#include "kb/kindness.hpp"

namespace kb {

/// A subcommand outcome: a machine-readable document (deterministic byte
/// for byte given identical inputs) plus the witness flag that drives the
/// exit-code contract.
struct Report {
    nlohmann::ordered_json doc;
    bool witness = false;

    std::string json() const { return doc.dump(2) + "\n"; }
    std::string text() const;
};

/// Bounded searches for one condition, merged with the closure-rule
/// certifier into a kind / unkind / inconclusive verdict.
Report runRingCheck(const RingSpec& ring, int condition, const SearchBounds& bounds);

/// Parses and validates a groupoid document (or builtin "Rn:k").
Report runGroupoidValidate(const std::string& text, const std::string& name);

/// Full projection census over a validated groupoid.
Report runAlgebraProjections(const RingSpec& ring, std::shared_ptr<const FiniteGroupoid> g,
                             const std::string& groupoidName, int maxHeight,
                             std::uint64_t budget, int threads);

/// Predicates for one matrix literal: unitary, monomial, self-adjoint, and
/// whether conjugation by it preserves the diagonal.
Report runMatrixProbe(const RingSpec& ring, const std::string& matrixJson);

/// Witness conversion between conditions 1, 2, 6 and the non-diagonal
/// projection; target is "1", "2", "6" or "projection".
Report runWitnessConvert(const RingSpec& ring, int fromCondition, const std::string& target,
                         const std::string& witnessJson);

/// Matrix literal: row-major nested lists of ring-element strings.
RingMatrix parseMatrixJson(const RingSpec& ring, const std::string& text);
std::vector<RingElement> parseVectorJson(const RingSpec& ring, const std::string& text);

nlohmann::ordered_json certificateToJson(const KindCertificate& cert);

} // namespace kb
