#pragma once

#include <json.hpp>

#include "rmz/asymptotics.hpp"
#include "rmz/chains.hpp"
#include "rmz/covering.hpp"
#include "rmz/remez.hpp"
#include "rmz/valence.hpp"

namespace rmz {

using ordered_json = nlohmann::ordered_json;

// Deterministic dump: fixed field order (ordered_json) and floats at 17
// significant digits, so identical inputs give byte-identical files.
std::string dump_json(const ordered_json& j, int indent = 2);

ordered_json complex_to_json(Complex z);
Complex complex_from_json(const ordered_json& j);

ordered_json to_json(const PointSet& ps);
PointSet pointset_from_json(const ordered_json& j);

ordered_json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const ordered_json& j);

ordered_json to_json(const BivariatePolynomial& q);
BivariatePolynomial bivariate_from_json(const ordered_json& j);

ordered_json to_json(const Disk& d);
ordered_json to_json(const Covering& c);
ordered_json to_json(const InvariantReport& rep);
ordered_json to_json(const RemezCertificate& cert);
ordered_json to_json(const std::vector<RemezCertificate>& certs,
                     const HarnessSummary& summary);
ordered_json to_json(const LeadingCoeffCertificate& cert);
ordered_json to_json(const CartanReport& rep);
ordered_json to_json(const ValenceReport& rep);
ordered_json to_json(const DistortionReport& rep);
ordered_json to_json(const SingularLocus& locus);
ordered_json to_json(const BranchGerm& germ);
ordered_json to_json(const MonodromyAction& act);
ordered_json to_json(const Chain& chain);
ordered_json to_json(const ChainConstantReport& rep);
ordered_json to_json(const CurveRemezCertificate& cert);
ordered_json to_json(const GlobalRemezCertificate& cert);
ordered_json to_json(const AsymptoticsRow& row);
ordered_json to_json(const SlopeFit& fit);

}  // namespace rmz
