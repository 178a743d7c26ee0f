#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "topodyn/dynamics.hpp"

namespace topodyn {

/// A system together with the user-facing point names. Index i of the name
/// list is internal point i; all set output lists members in index order,
/// which is the order the names arrived in.
struct NamedSystem {
  std::vector<std::string> point_names;
  DynSystem system;
};

/// Thrown on malformed system documents: invalid JSON, missing or
/// ill-typed fields, unknown or duplicate point names, a non-total map.
/// Families that fail to be a topology throw TopologyError instead.
class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(const std::string& message);
};

/// Parses a JSON system document of the form
///   {"points": ["a","b"], "opens": [["a"]], "map": {"a":"b","b":"b"}}
/// The empty set and the full space may be omitted from opens; they are
/// restored by canonicalization.
NamedSystem parse_system_document(const std::string& json_text);

/// Serializes in canonical form: every open (including the empty set and
/// the full space) in canonical order, each set's members in point order,
/// the map keyed in point order. pretty selects indented output; otherwise
/// the document is a single line.
std::string serialize_system_document(const NamedSystem& named,
                                      bool pretty = false);

/// "{a,c}" under the given names.
std::string format_subset(const std::vector<std::string>& names, SubsetMask s);

/// Wraps a bare system with generated names a, b, c, ...
NamedSystem with_default_names(const DynSystem& sys);
std::vector<std::string> default_point_names(int n);

}  // namespace topodyn
