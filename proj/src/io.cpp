#include "elolab/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace elolab {

namespace {

constexpr std::string_view kFeedbackHeader = "prompt_id,model_a,model_b,winner";

std::string fixed4(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << value;
  return out.str();
}

std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void check_csv_safe(const std::string& field, const char* what) {
  if (field.find_first_of(",\"\r\n") != std::string::npos) {
    throw FeedbackFormatError(std::string(what) +
                              " contains characters the feedback CSV cannot "
                              "carry (comma, quote, or newline): " +
                              field);
  }
}

std::string winner_token(Winner winner) {
  switch (winner) {
    case Winner::a: return "model_a";
    case Winner::b: return "model_b";
    case Winner::tie: return "tie";
  }
  throw std::invalid_argument("unknown winner enum value");
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  return out;
}

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          std::ostringstream hex;
          hex << "\\u" << std::hex << std::setw(4) << std::setfill('0')
              << static_cast<int>(c);
          out += hex.str();
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_string_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + json_escape(items[i]) + "\"";
  }
  return out + "]";
}

}  // namespace

std::vector<FeedbackRecord> read_feedback(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FeedbackFormatError("cannot open feedback file: " + path.string());
  }
  std::string line;
  std::size_t line_number = 0;
  std::vector<FeedbackRecord> records;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != kFeedbackHeader) {
        throw FeedbackFormatError(location(path, line_number) +
                                  ": header mismatch, expected '" +
                                  std::string(kFeedbackHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 4) {
      throw FeedbackFormatError(location(path, line_number) + ": expected 4 " +
                                "fields, got " +
                                std::to_string(fields.size()));
    }
    FeedbackRecord record;
    record.prompt_id = fields[0];
    record.model_a = fields[1];
    record.model_b = fields[2];
    if (record.model_a.empty() || record.model_b.empty()) {
      throw FeedbackFormatError(location(path, line_number) +
                                ": empty model identifier");
    }
    if (record.model_a == record.model_b) {
      throw FeedbackFormatError(location(path, line_number) +
                                ": self-match for model " + record.model_a);
    }
    if (fields[3] == "model_a") {
      record.winner = Winner::a;
    } else if (fields[3] == "model_b") {
      record.winner = Winner::b;
    } else if (fields[3] == "tie") {
      record.winner = Winner::tie;
    } else {
      throw FeedbackFormatError(location(path, line_number) +
                                ": unknown winner token '" + fields[3] + "'");
    }
    records.push_back(std::move(record));
  }
  if (!saw_header) {
    throw FeedbackFormatError(path.string() + ": empty file, expected header");
  }
  return records;
}

void write_feedback(const std::filesystem::path& path,
                    std::span<const FeedbackRecord> records) {
  for (const FeedbackRecord& record : records) {
    check_csv_safe(record.prompt_id, "prompt_id");
    check_csv_safe(record.model_a, "model_a");
    check_csv_safe(record.model_b, "model_b");
    if (record.model_a.empty() || record.model_b.empty() ||
        record.model_a == record.model_b) {
      throw FeedbackFormatError("invalid matchup: '" + record.model_a +
                                "' vs '" + record.model_b + "'");
    }
  }
  std::ofstream out = open_output(path);
  out << kFeedbackHeader << "\n";
  for (const FeedbackRecord& record : records) {
    out << record.prompt_id << ',' << record.model_a << ',' << record.model_b
        << ',' << winner_token(record.winner) << "\n";
  }
}

std::vector<FeedbackRecord> to_feedback(std::span<const MatchRecord> records) {
  std::vector<FeedbackRecord> rows;
  rows.reserve(records.size());
  for (const MatchRecord& record : records) {
    FeedbackRecord row;
    std::ostringstream id;
    id << "g" << std::setw(6) << std::setfill('0') << record.sequence_index;
    row.prompt_id = id.str();
    row.model_a = record.model_a;
    row.model_b = record.model_b;
    row.winner = record.outcome == Outcome::a_wins   ? Winner::a
                 : record.outcome == Outcome::b_wins ? Winner::b
                                                     : Winner::tie;
    rows.push_back(std::move(row));
  }
  return rows;
}

LoadResult load_feedback(const std::filesystem::path& path,
                         TiePolicy tie_policy) {
  std::vector<FeedbackRecord> rows = read_feedback(path);
  LoadResult result;
  if (rows.empty()) {
    result.warnings.push_back(path.string() + ": no data rows after header");
    return result;
  }
  for (const FeedbackRecord& row : rows) {
    if (row.winner == Winner::tie && tie_policy == TiePolicy::exclude) {
      ++result.ties_skipped;
      continue;
    }
    MatchRecord record;
    record.model_a = row.model_a;
    record.model_b = row.model_b;
    record.outcome = row.winner == Winner::a   ? Outcome::a_wins
                     : row.winner == Winner::b ? Outcome::b_wins
                                               : Outcome::tie;
    record.sequence_index = result.records.size();
    result.records.push_back(std::move(record));
  }
  return result;
}

WinRateTable win_rates(std::span<const MatchRecord> records) {
  struct Tally {
    std::int64_t first_wins = 0;
    std::int64_t second_wins = 0;
    std::int64_t ties = 0;
  };
  std::map<std::pair<std::string, std::string>, Tally> tallies;
  for (const MatchRecord& record : records) {
    bool in_order = record.model_a < record.model_b;
    auto key = in_order ? std::make_pair(record.model_a, record.model_b)
                        : std::make_pair(record.model_b, record.model_a);
    Tally& tally = tallies[key];
    if (record.outcome == Outcome::tie) {
      ++tally.ties;
    } else {
      bool first_won = (record.outcome == Outcome::a_wins) == in_order;
      ++(first_won ? tally.first_wins : tally.second_wins);
    }
  }
  WinRateTable table;
  for (const auto& [key, tally] : tallies) {
    std::int64_t decided = tally.first_wins + tally.second_wins;
    MatchupRates forward{key.first, key.second, tally.first_wins,
                         tally.second_wins, tally.ties, std::nullopt};
    MatchupRates backward{key.second, key.first, tally.second_wins,
                          tally.first_wins, tally.ties, std::nullopt};
    if (decided > 0) {
      forward.win_rate = static_cast<double>(tally.first_wins) /
                         static_cast<double>(decided);
      backward.win_rate = static_cast<double>(tally.second_wins) /
                          static_cast<double>(decided);
    }
    table.rows.push_back(std::move(forward));
    table.rows.push_back(std::move(backward));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const MatchupRates& lhs, const MatchupRates& rhs) {
              if (lhs.model != rhs.model) return lhs.model < rhs.model;
              return lhs.opponent < rhs.opponent;
            });
  return table;
}

EmitFormat format_from_name(const std::string& name) {
  if (name == "csv") return EmitFormat::csv;
  if (name == "jsonl") return EmitFormat::jsonl;
  throw std::invalid_argument("unknown output format: " + name);
}

void emit_summary(const PermutationSummary& summary,
                  const std::filesystem::path& path, EmitFormat format) {
  if (format != EmitFormat::csv) {
    throw std::invalid_argument("emit_summary: only csv output is supported");
  }
  if (summary.mean_ratings.empty()) {
    throw std::invalid_argument(
        "emit_summary: summary carries no per-match statistics");
  }
  std::ofstream out = open_output(path);
  out << "match_index";
  for (const std::string& id : summary.model_ids) {
    out << ",mean_" << id << ",sem_" << id;
  }
  out << "\n";
  for (std::size_t row = 0; row < summary.mean_ratings.size(); ++row) {
    out << row;
    for (std::size_t m = 0; m < summary.model_ids.size(); ++m) {
      out << ',' << fixed4(summary.mean_ratings[row][m]) << ','
          << fixed4(summary.sem_ratings[row][m]);
    }
    out << "\n";
  }
}

void emit_grid(const SweepGrid& grid, const std::filesystem::path& path,
               EmitFormat format) {
  if (format != EmitFormat::csv) {
    throw std::invalid_argument("emit_grid: only csv output is supported");
  }
  std::ofstream out = open_output(path);
  out << "# final rating difference: mean_final(" << grid.model_a
      << ") - mean_final(" << grid.model_b << "), seed=" << grid.master_seed
      << "\n";
  for (std::size_t row = 0; row < grid.row_labels.size(); ++row) {
    out << "# row " << grid.row_labels[row] << "\n";
    out << "k";
    for (std::int64_t np : grid.n_perms_values) out << ",nperms=" << np;
    out << "\n";
    for (std::size_t ki = 0; ki < grid.k_values.size(); ++ki) {
      out << fixed4(grid.k_values[ki]);
      for (std::size_t np = 0; np < grid.n_perms_values.size(); ++np) {
        out << ',' << fixed4(grid.diffs[row][ki][np]);
      }
      out << "\n";
    }
  }
}

void emit_report(const TransitivityReport& report,
                 const std::filesystem::path& path, EmitFormat format) {
  std::ofstream out = open_output(path);
  if (format == EmitFormat::jsonl) {
    for (const TransitivityConfigResult& result : report.results) {
      out << "{\"scenario\":\"" << json_escape(report.scenario)
          << "\",\"seed\":" << report.master_seed
          << ",\"n_perms\":" << result.config.n_perms
          << ",\"k\":" << fixed4(result.config.k_factor)
          << ",\"expected\":" << json_string_array(report.expected_ranking)
          << ",\"ranking\":" << json_string_array(result.implied_ranking)
          << ",\"violation\":" << (result.violation ? "true" : "false")
          << ",\"models\":[";
      for (std::size_t m = 0; m < result.model_ids.size(); ++m) {
        if (m > 0) out << ",";
        out << "{\"id\":\"" << json_escape(result.model_ids[m])
            << "\",\"mean\":" << fixed4(result.mean_final[m])
            << ",\"sem\":" << fixed4(result.sem_final[m]) << "}";
      }
      out << "]}\n";
    }
    return;
  }
  out << "scenario,n_perms,k,model,mean,sem,rank,violation\n";
  for (const TransitivityConfigResult& result : report.results) {
    for (std::size_t m = 0; m < result.model_ids.size(); ++m) {
      auto rank_it = std::find(result.implied_ranking.begin(),
                               result.implied_ranking.end(),
                               result.model_ids[m]);
      std::size_t rank =
          static_cast<std::size_t>(rank_it - result.implied_ranking.begin()) +
          1;
      out << report.scenario << ',' << result.config.n_perms << ','
          << fixed4(result.config.k_factor) << ',' << result.model_ids[m]
          << ',' << fixed4(result.mean_final[m]) << ','
          << fixed4(result.sem_final[m]) << ',' << rank << ','
          << (result.violation ? "true" : "false") << "\n";
    }
  }
}

void emit_win_rates(const WinRateTable& table,
                    const std::filesystem::path& path, EmitFormat format) {
  std::ofstream out = open_output(path);
  if (format == EmitFormat::jsonl) {
    for (const MatchupRates& row : table.rows) {
      out << "{\"model\":\"" << json_escape(row.model) << "\",\"opponent\":\""
          << json_escape(row.opponent) << "\",\"wins\":" << row.wins
          << ",\"losses\":" << row.losses << ",\"ties\":" << row.ties
          << ",\"win_rate\":"
          << (row.win_rate ? fixed4(*row.win_rate) : std::string("null"))
          << "}\n";
    }
    return;
  }
  out << "model,opponent,wins,losses,ties,win_rate\n";
  for (const MatchupRates& row : table.rows) {
    out << row.model << ',' << row.opponent << ',' << row.wins << ','
        << row.losses << ',' << row.ties << ','
        << (row.win_rate ? fixed4(*row.win_rate) : std::string()) << "\n";
  }
}

}  // namespace elolab
