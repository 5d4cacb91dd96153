#pragma once

#include "json.hpp"
#include "twistlab/experiment.hpp"
#include "twistlab/twist.hpp"

/// JSON encodings of the library types. Key order is fixed so output is byte-stable.
namespace twistlab::report {

using Json = nlohmann::ordered_json;

Json to_json(const rootsys::Root& r);
Json to_json(const rootsys::RootSystem& rs);
Json to_json(const rootsys::IndexSet& s);
/// The canonical reduced word.
Json to_json(const weyl::WeylElement& w);
Json to_json(const twist::Conditions& c);
Json to_json(const twist::ClassProfile& p);
Json to_json(const twist::Candidate& c);
Json to_json(const chevalley::Matrix& x);
Json to_json(const chevalley::OrbitReport& r);

}  // namespace twistlab::report
