#ifndef TONGUETRACE_MANIFEST_HPP
#define TONGUETRACE_MANIFEST_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tonguetrace {

enum class Split { train, valid, test, unassigned };

const char* to_string(Split split);
Split split_from_string(std::string_view name); // throws std::invalid_argument

// One corpus image with its optional prediction and ground-truth sidecars.
// Paths are interpreted relative to the manifest file's directory.
struct ManifestEntry {
    std::string id;
    std::string image_path;
    std::optional<std::string> prob_path;
    std::optional<std::string> truth_contour_path;
    std::string speaker;
    Split split = Split::unassigned;
};

// JSON array of entry objects; unknown fields are ignored. Duplicate ids and
// invalid split values raise FormatError naming the entry.
std::vector<ManifestEntry> read_manifest(std::string_view text);
std::string write_manifest(const std::vector<ManifestEntry>& entries);

} // namespace tonguetrace

#endif
