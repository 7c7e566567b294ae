#include "sentivol/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "sentivol/errors.hpp"

namespace sentivol::cli {

namespace {

corpus::Post parse_post_line(const std::string& line, corpus::TokenizerMode mode) {
    const auto j = nlohmann::json::parse(line);
    if (!j.is_object()) throw std::runtime_error{"not a JSON object"};

    corpus::Post post;
    post.id = j.at("id").get<std::string>();
    post.stock_id = j.at("stock").get<std::string>();

    const auto date = Date::parse(j.at("date").get<std::string>());
    if (!date) throw std::runtime_error{"bad date"};
    post.date = *date;

    if (j.contains("tokens")) {
        post.tokens = j.at("tokens").get<std::vector<std::string>>();
    } else if (j.contains("text")) {
        post.tokens = corpus::tokenize(j.at("text").get<std::string>(), mode);
    } else {
        throw std::runtime_error{"missing tokens/text"};
    }
    if (post.tokens.empty()) throw std::runtime_error{"empty token sequence"};
    for (const auto& t : post.tokens)
        if (t.empty()) throw std::runtime_error{"empty token"};

    if (j.contains("label") && !j.at("label").is_null()) {
        const auto label = j.at("label").get<std::string>();
        if (label == "pos") post.label = corpus::Polarity::Positive;
        else if (label == "neg") post.label = corpus::Polarity::Negative;
        else throw std::runtime_error{"bad label: " + label};
    }
    return post;
}

} // namespace

namespace {
void strip_bom(std::string& line) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}
} // namespace

LoadedPosts load_posts(const std::string& path, corpus::TokenizerMode mode) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};

    LoadedPosts out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        if (line.empty()) continue;
        try {
            out.posts.push_back(parse_post_line(line, mode));
        } catch (const std::exception& e) {
            out.errors.push_back({line_no, e.what()});
        }
    }
    if (out.posts.empty()) throw NoValidPosts{};
    return out;
}

market::PriceSeries load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};

    std::string line;
    if (!std::getline(in, line)) throw IoFailure{"empty price file " + path};
    strip_bom(line);
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line != "date,close") throw IoFailure{"expected header date,close in " + path};

    market::PriceSeries series;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.size() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoFailure{path + ":" + std::to_string(line_no) + ": expected date,close"};
        const auto date = Date::parse(line.substr(0, comma));
        if (!date) throw IoFailure{path + ":" + std::to_string(line_no) + ": bad date"};
        double close = 0.0;
        try {
            close = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw IoFailure{path + ":" + std::to_string(line_no) + ": bad close"};
        }
        if (!(close > 0.0)) throw NonPositivePrice{date->to_string()};
        series.push_back({*date, close});
    }

    std::stable_sort(series.begin(), series.end(),
                     [](const auto& a, const auto& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].date == series[i - 1].date) throw DuplicateDate{series[i].date.to_string()};
    return series;
}

void write_posts_jsonl(const std::vector<corpus::Post>& posts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    for (const auto& p : posts) {
        nlohmann::json j;
        j["id"] = p.id;
        j["stock"] = p.stock_id;
        j["date"] = p.date.to_string();
        j["tokens"] = p.tokens;
        if (p.label)
            j["label"] = *p.label == corpus::Polarity::Positive ? "pos" : "neg";
        else
            j["label"] = nullptr;
        out << j.dump() << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

void write_prices_csv(const market::PriceSeries& prices, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "date,close\n";
    char buf[64];
    for (const auto& p : prices) {
        std::snprintf(buf, sizeof(buf), "%.4f", p.close);
        out << p.date.to_string() << ',' << buf << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

} // namespace sentivol::cli
