#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tagrec/types.hpp"

namespace tagrec {

/// Raised by loaders; carries the file and 1-based line of the offending record.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what)
        : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// Line formats:
//   POIs:      poi_id <TAB> tag1|tag2|...            (tag list may be empty)
//   Profiles:  user_id <TAB> poi_id <TAB> rating <TAB> tag1|tag2|...
//   Requests:  request_id <TAB> user_id <TAB> city,trip_type,duration,group,season <TAB> cand1|cand2|...
//   Qrels:     request_id 0 poi_id grade
//   Run:       request_id Q0 poi_id rank score run_tag   (score with 6 decimals)

std::vector<Poi> load_pois(const std::filesystem::path& path);
std::vector<UserProfile> load_profiles(const std::filesystem::path& path);
std::vector<RequestRecord> load_requests(const std::filesystem::path& path);
Qrels load_qrels(const std::filesystem::path& path);
RunFile read_run(const std::filesystem::path& path);

void write_pois(const std::vector<Poi>& pois, const std::filesystem::path& path);
void write_profiles(const std::vector<UserProfile>& profiles, const std::filesystem::path& path);
void write_requests(const std::vector<RequestRecord>& requests,
                    const std::filesystem::path& path);
void write_qrels(const Qrels& qrels, const std::filesystem::path& path);
void write_run(const RunFile& run, const std::filesystem::path& path);

/// Canonical serialization of a run; write_run emits exactly this.
std::string format_run(const RunFile& run);

/// A loadable collection: POIs, profiles, requests, and (optionally) qrels.
struct Dataset {
    std::vector<Poi> pois;
    std::vector<UserProfile> profiles;
    std::vector<RequestRecord> requests;
    Qrels qrels;
    bool has_qrels = false;
};

/// Reads pois.tsv, profiles.tsv, requests.tsv and, when present, qrels.txt
/// from `dir`.
Dataset load_dataset(const std::filesystem::path& dir);
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

/// Joins request records against profiles and the POI collection.
/// Throws std::invalid_argument on dangling user or candidate ids.
std::vector<Request> resolve_requests(const Dataset& dataset);

/// Fixed-format float helpers shared by writers (deterministic output).
std::string format_score(double value);       // 6 decimal places
std::string format_full(double value);        // round-trip exact (%.17g)

}  // namespace tagrec
