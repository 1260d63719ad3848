#include "tagrec/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tagrec {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<Tag> parse_tag_list(const std::string& field, const std::filesystem::path& file,
                                std::size_t line_no) {
    std::vector<Tag> tags;
    if (field.empty()) return tags;
    for (const std::string& raw : split(field, '|')) {
        try {
            tags.push_back(normalize_tag(raw));
        } catch (const std::invalid_argument&) {
            throw ParseError(file, line_no, "empty tag in list '" + field + "'");
        }
    }
    return tags;
}

int parse_int(const std::string& field, const std::filesystem::path& file, std::size_t line_no,
              const char* what) {
    try {
        std::size_t consumed = 0;
        int value = std::stoi(field, &consumed);
        if (consumed != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw ParseError(file, line_no, std::string("bad ") + what + " '" + field + "'");
    }
}

double parse_double(const std::string& field, const std::filesystem::path& file,
                    std::size_t line_no, const char* what) {
    try {
        std::size_t consumed = 0;
        double value = std::stod(field, &consumed);
        if (consumed != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw ParseError(file, line_no, std::string("bad ") + what + " '" + field + "'");
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

// Iterates non-empty lines, tracking the 1-based line number.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(line, line_no);
    }
}

}  // namespace

std::string format_score(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::vector<Poi> load_pois(const std::filesystem::path& path) {
    std::vector<Poi> pois;
    std::unordered_set<std::string> seen;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            throw ParseError(path, line_no, "expected 2 tab-separated fields, got " +
                                                std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(path, line_no, "empty poi id");
        if (!seen.insert(fields[0]).second)
            throw ParseError(path, line_no, "duplicate poi id '" + fields[0] + "'");
        pois.push_back(Poi{fields[0], parse_tag_list(fields[1], path, line_no)});
    });
    return pois;
}

std::vector<UserProfile> load_profiles(const std::filesystem::path& path) {
    std::vector<UserProfile> profiles;
    std::unordered_map<std::string, std::size_t> index;
    std::set<std::pair<std::string, std::string>> seen;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw ParseError(path, line_no, "expected 4 tab-separated fields, got " +
                                                std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(path, line_no, "empty user id");
        if (fields[1].empty()) throw ParseError(path, line_no, "empty poi id");
        int rating = parse_int(fields[2], path, line_no, "rating");
        if (rating < kMinRating || rating > kMaxRating)
            throw ParseError(path, line_no, "rating " + fields[2] + " outside 0..4");
        if (!seen.emplace(fields[0], fields[1]).second)
            throw ParseError(path, line_no,
                             "duplicate profile entry (" + fields[0] + ", " + fields[1] + ")");

        auto [it, inserted] = index.emplace(fields[0], profiles.size());
        if (inserted) profiles.push_back(UserProfile{fields[0], {}});
        profiles[it->second].entries.push_back(
            ProfileEntry{Poi{fields[1], parse_tag_list(fields[3], path, line_no)}, rating});
    });
    return profiles;
}

std::vector<RequestRecord> load_requests(const std::filesystem::path& path) {
    std::vector<RequestRecord> requests;
    std::unordered_set<std::string> seen;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw ParseError(path, line_no, "expected 4 tab-separated fields, got " +
                                                std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(path, line_no, "empty request id");
        if (!seen.insert(fields[0]).second)
            throw ParseError(path, line_no, "duplicate request id '" + fields[0] + "'");

        auto context_fields = split(fields[2], ',');
        if (context_fields.size() != 5)
            throw ParseError(path, line_no, "expected 5 comma-separated context fields, got " +
                                                std::to_string(context_fields.size()));

        RequestRecord record;
        record.request_id = fields[0];
        record.user_id = fields[1];
        record.context = Context{context_fields[0], context_fields[1], context_fields[2],
                                 context_fields[3], context_fields[4]};
        if (!fields[3].empty()) {
            for (const std::string& cand : split(fields[3], '|')) {
                if (cand.empty()) throw ParseError(path, line_no, "empty candidate id");
                record.candidate_ids.push_back(cand);
            }
        }
        requests.push_back(std::move(record));
    });
    return requests;
}

Qrels load_qrels(const std::filesystem::path& path) {
    Qrels qrels;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        std::istringstream iss(line);
        std::string request_id, zero, poi_id, grade_str, extra;
        if (!(iss >> request_id >> zero >> poi_id >> grade_str) || (iss >> extra))
            throw ParseError(path, line_no, "expected 'request_id 0 poi_id grade'");
        int grade = parse_int(grade_str, path, line_no, "grade");
        if (grade < 0) throw ParseError(path, line_no, "negative grade");
        try {
            qrels.add(request_id, poi_id, grade);
        } catch (const std::invalid_argument& e) {
            throw ParseError(path, line_no, e.what());
        }
    });
    return qrels;
}

RunFile read_run(const std::filesystem::path& path) {
    RunFile run;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        std::istringstream iss(line);
        RunEntry entry;
        std::string q0, rank_str, score_str, extra;
        if (!(iss >> entry.request_id >> q0 >> entry.poi_id >> rank_str >> score_str >>
              entry.run_tag) ||
            (iss >> extra))
            throw ParseError(path, line_no, "expected 'request_id Q0 poi_id rank score tag'");
        entry.rank = parse_int(rank_str, path, line_no, "rank");
        if (entry.rank < 1) throw ParseError(path, line_no, "rank must be >= 1");
        entry.score = parse_double(score_str, path, line_no, "score");
        run.push_back(std::move(entry));
    });
    return run;
}

namespace {

std::string join_tags(const std::vector<Tag>& tags) {
    std::string out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (i) out.push_back('|');
        out += tags[i].raw;
    }
    return out;
}

}  // namespace

void write_pois(const std::vector<Poi>& pois, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (const Poi& poi : pois) out << poi.id << '\t' << join_tags(poi.tags) << '\n';
}

void write_profiles(const std::vector<UserProfile>& profiles,
                    const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (const UserProfile& profile : profiles)
        for (const ProfileEntry& entry : profile.entries)
            out << profile.user_id << '\t' << entry.poi.id << '\t' << entry.rating << '\t'
                << join_tags(entry.poi.tags) << '\n';
}

void write_requests(const std::vector<RequestRecord>& requests,
                    const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (const RequestRecord& r : requests) {
        out << r.request_id << '\t' << r.user_id << '\t' << r.context.city << ','
            << r.context.trip_type << ',' << r.context.trip_duration << ',' << r.context.group_type
            << ',' << r.context.season << '\t';
        for (std::size_t i = 0; i < r.candidate_ids.size(); ++i) {
            if (i) out << '|';
            out << r.candidate_ids[i];
        }
        out << '\n';
    }
}

void write_qrels(const Qrels& qrels, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    for (const auto& [request_id, judged] : qrels.all())
        for (const auto& [poi_id, grade] : judged)
            out << request_id << " 0 " << poi_id << ' ' << grade << '\n';
}

std::string format_run(const RunFile& run) {
    std::string out;
    for (const RunEntry& entry : run) {
        out += entry.request_id;
        out += " Q0 ";
        out += entry.poi_id;
        out += ' ';
        out += std::to_string(entry.rank);
        out += ' ';
        out += format_score(entry.score);
        out += ' ';
        out += entry.run_tag;
        out += '\n';
    }
    return out;
}

void write_run(const RunFile& run, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << format_run(run);
}

Dataset load_dataset(const std::filesystem::path& dir) {
    Dataset dataset;
    dataset.pois = load_pois(dir / "pois.tsv");
    dataset.profiles = load_profiles(dir / "profiles.tsv");
    dataset.requests = load_requests(dir / "requests.tsv");
    auto qrels_path = dir / "qrels.txt";
    if (std::filesystem::exists(qrels_path)) {
        dataset.qrels = load_qrels(qrels_path);
        dataset.has_qrels = true;
    }
    return dataset;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_pois(dataset.pois, dir / "pois.tsv");
    write_profiles(dataset.profiles, dir / "profiles.tsv");
    write_requests(dataset.requests, dir / "requests.tsv");
    if (dataset.has_qrels) write_qrels(dataset.qrels, dir / "qrels.txt");
}

std::vector<Request> resolve_requests(const Dataset& dataset) {
    std::unordered_map<std::string, const UserProfile*> profile_by_user;
    for (const UserProfile& profile : dataset.profiles)
        profile_by_user.emplace(profile.user_id, &profile);
    std::unordered_map<std::string, const Poi*> poi_by_id;
    for (const Poi& poi : dataset.pois) poi_by_id.emplace(poi.id, &poi);

    std::vector<Request> requests;
    requests.reserve(dataset.requests.size());
    for (const RequestRecord& record : dataset.requests) {
        auto profile_it = profile_by_user.find(record.user_id);
        if (profile_it == profile_by_user.end())
            throw std::invalid_argument("request " + record.request_id + ": unknown user '" +
                                        record.user_id + "'");
        Request request;
        request.request_id = record.request_id;
        request.profile = *profile_it->second;
        request.context = record.context;
        for (const std::string& cand : record.candidate_ids) {
            auto poi_it = poi_by_id.find(cand);
            if (poi_it == poi_by_id.end())
                throw std::invalid_argument("request " + record.request_id +
                                            ": unknown candidate '" + cand + "'");
            request.candidates.push_back(*poi_it->second);
        }
        requests.push_back(std::move(request));
    }
    return requests;
}

}  // namespace tagrec
