#include "tonguetrace/manifest.hpp"

#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "tonguetrace/pgm.hpp" // FormatError

namespace tonguetrace {

using nlohmann::json;

const char* to_string(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::valid: return "valid";
        case Split::test: return "test";
        case Split::unassigned: return "unassigned";
    }
    return "unassigned";
}

Split split_from_string(std::string_view name) {
    if (name == "train") return Split::train;
    if (name == "valid") return Split::valid;
    if (name == "test") return Split::test;
    if (name == "unassigned") return Split::unassigned;
    throw std::invalid_argument("invalid split value '" + std::string(name) + "'");
}

std::vector<ManifestEntry> read_manifest(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw FormatError("manifest must be a JSON array");

    std::vector<ManifestEntry> entries;
    std::unordered_set<std::string> seen_ids;
    entries.reserve(doc.size());
    for (const auto& item : doc) {
        if (!item.is_object()) throw FormatError("manifest entries must be JSON objects");
        ManifestEntry entry;
        try {
            entry.id = item.at("id").get<std::string>();
            entry.image_path = item.at("image_path").get<std::string>();
        } catch (const json::exception& e) {
            throw FormatError(std::string("manifest entry missing id/image_path: ") + e.what());
        }
        if (!seen_ids.insert(entry.id).second)
            throw FormatError("duplicate manifest id '" + entry.id + "'");
        if (item.contains("prob_path") && !item["prob_path"].is_null())
            entry.prob_path = item["prob_path"].get<std::string>();
        if (item.contains("truth_contour_path") && !item["truth_contour_path"].is_null())
            entry.truth_contour_path = item["truth_contour_path"].get<std::string>();
        if (item.contains("speaker") && !item["speaker"].is_null())
            entry.speaker = item["speaker"].get<std::string>();
        if (item.contains("split") && !item["split"].is_null()) {
            try {
                entry.split = split_from_string(item["split"].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw FormatError("manifest entry '" + entry.id + "': " + e.what());
            }
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string write_manifest(const std::vector<ManifestEntry>& entries) {
    json doc = json::array();
    for (const ManifestEntry& entry : entries) {
        json item = {{"id", entry.id}, {"image_path", entry.image_path}, {"split", to_string(entry.split)}};
        if (entry.prob_path) item["prob_path"] = *entry.prob_path;
        if (entry.truth_contour_path) item["truth_contour_path"] = *entry.truth_contour_path;
        if (!entry.speaker.empty()) item["speaker"] = entry.speaker;
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

} // namespace tonguetrace
