#include "shotscout/model/serde.hpp"

#include "shotscout/errors.hpp"

namespace shotscout::model {

using nlohmann::json;

void to_json(json& j, const ShotQuery& q) {
    j = json{
        {"description", q.description},
        {"constraint_kind", to_string(q.constraint_kind)},
        {"language", q.language},
    };
    if (q.constraint_text) j["constraint_text"] = *q.constraint_text;
}

void from_json(const json& j, ShotQuery& q) {
    j.at("description").get_to(q.description);
    q.constraint_kind = constraint_kind_from_string(j.at("constraint_kind").get<std::string>());
    j.at("language").get_to(q.language);
    if (j.contains("constraint_text")) {
        q.constraint_text = j.at("constraint_text").get<std::string>();
    } else {
        q.constraint_text.reset();
    }
}

void to_json(json& j, const AssetPaths& a) {
    j = json{
        {"target_frame", a.target_frame},
        {"preceding_frames", a.preceding_frames},
        {"following_frames", a.following_frames},
        {"audio_clip", a.audio_clip},
        {"metadata", a.metadata},
    };
}

void from_json(const json& j, AssetPaths& a) {
    j.at("target_frame").get_to(a.target_frame);
    j.at("preceding_frames").get_to(a.preceding_frames);
    j.at("following_frames").get_to(a.following_frames);
    j.at("audio_clip").get_to(a.audio_clip);
    j.at("metadata").get_to(a.metadata);
}

void to_json(json& j, const BenchmarkSample& s) {
    j = json{
        {"id", s.id},
        {"video_link", s.video_link},
        {"video_source", s.video_source},
        {"category", s.category},
        {"timestamp", s.timestamp},
        {"resolution", s.resolution},
        {"segment_description_ch", s.segment_description_ch},
        {"segment_description_en", s.segment_description_en},
        {"context_description_ch", s.context_description_ch},
        {"context_description_en", s.context_description_en},
        {"color_description_ch", s.color_description_ch},
        {"color_description_en", s.color_description_en},
        {"style_description_ch", s.style_description_ch},
        {"style_description_en", s.style_description_en},
        {"audio_description_ch", s.audio_description_ch},
        {"audio_description_en", s.audio_description_en},
        {"asset_paths", s.asset_paths},
    };
}

void from_json(const json& j, BenchmarkSample& s) {
    j.at("id").get_to(s.id);
    j.at("video_link").get_to(s.video_link);
    j.at("video_source").get_to(s.video_source);
    j.at("category").get_to(s.category);
    j.at("timestamp").get_to(s.timestamp);
    j.at("resolution").get_to(s.resolution);
    j.at("segment_description_ch").get_to(s.segment_description_ch);
    j.at("segment_description_en").get_to(s.segment_description_en);
    j.at("context_description_ch").get_to(s.context_description_ch);
    j.at("context_description_en").get_to(s.context_description_en);
    j.at("color_description_ch").get_to(s.color_description_ch);
    j.at("color_description_en").get_to(s.color_description_en);
    j.at("style_description_ch").get_to(s.style_description_ch);
    j.at("style_description_en").get_to(s.style_description_en);
    j.at("audio_description_ch").get_to(s.audio_description_ch);
    j.at("audio_description_en").get_to(s.audio_description_en);
    if (j.contains("asset_paths")) j.at("asset_paths").get_to(s.asset_paths);
}

void to_json(json& j, const VideoAsset& v) {
    j = json{
        {"url", v.url},         {"local_path", v.local_path}, {"duration_s", v.duration_s},
        {"width", v.width},     {"height", v.height},         {"probe_ok", v.probe_ok},
    };
}

void from_json(const json& j, VideoAsset& v) {
    j.at("url").get_to(v.url);
    j.at("local_path").get_to(v.local_path);
    j.at("duration_s").get_to(v.duration_s);
    j.at("width").get_to(v.width);
    j.at("height").get_to(v.height);
    j.at("probe_ok").get_to(v.probe_ok);
}

void to_json(json& j, const FrameRef& f) {
    j = json{{"index", f.index}, {"timestamp_s", f.timestamp_s}, {"path", f.path}};
}

void from_json(const json& j, FrameRef& f) {
    j.at("index").get_to(f.index);
    j.at("timestamp_s").get_to(f.timestamp_s);
    j.at("path").get_to(f.path);
}

void to_json(json& j, const FrameGrid& g) {
    j = json{
        {"video", g.video},
        {"num_frames", g.num_frames},
        {"frames", g.frames},
    };
    if (g.audio_path) j["audio_path"] = *g.audio_path;
}

void from_json(const json& j, FrameGrid& g) {
    j.at("video").get_to(g.video);
    j.at("num_frames").get_to(g.num_frames);
    j.at("frames").get_to(g.frames);
    if (j.contains("audio_path")) {
        g.audio_path = j.at("audio_path").get<std::string>();
    } else {
        g.audio_path.reset();
    }
}

void to_json(json& j, const LocalizationOutcome& o) {
    j = json{
        {"candidate", o.candidate},
        {"chosen_frame_path", o.chosen_frame_path},
        {"raw_model_output", o.raw_model_output},
        {"note", o.note},
    };
    if (o.frame_index) {
        j["choice"] = json{{"frame_index", *o.frame_index}};
        if (o.chosen_timestamp_s) j["chosen_timestamp_s"] = *o.chosen_timestamp_s;
    } else {
        j["choice"] = "no_match";
    }
}

void from_json(const json& j, LocalizationOutcome& o) {
    j.at("candidate").get_to(o.candidate);
    j.at("chosen_frame_path").get_to(o.chosen_frame_path);
    j.at("raw_model_output").get_to(o.raw_model_output);
    j.at("note").get_to(o.note);
    const auto& choice = j.at("choice");
    if (choice.is_object()) {
        o.frame_index = choice.at("frame_index").get<int>();
        if (j.contains("chosen_timestamp_s")) {
            o.chosen_timestamp_s = j.at("chosen_timestamp_s").get<double>();
        } else {
            o.chosen_timestamp_s.reset();
        }
    } else {
        o.frame_index.reset();
        o.chosen_timestamp_s.reset();
    }
}

void to_json(json& j, const Verdict& v) {
    j = json{{"matched", v.matched}, {"judge_model", v.judge_model}, {"rationale", v.rationale}};
}

void from_json(const json& j, Verdict& v) {
    j.at("matched").get_to(v.matched);
    j.at("judge_model").get_to(v.judge_model);
    j.at("rationale").get_to(v.rationale);
}

void to_json(json& j, const FinalResult& f) {
    j = json{{"success", f.success}};
    if (f.winning_url) j["winning_url"] = *f.winning_url;
    if (f.winning_frame) j["winning_frame"] = *f.winning_frame;
    if (f.winning_timestamp_s) j["winning_timestamp_s"] = *f.winning_timestamp_s;
}

void from_json(const json& j, FinalResult& f) {
    j.at("success").get_to(f.success);
    f.winning_url.reset();
    f.winning_frame.reset();
    f.winning_timestamp_s.reset();
    if (j.contains("winning_url")) f.winning_url = j.at("winning_url").get<std::string>();
    if (j.contains("winning_frame")) f.winning_frame = j.at("winning_frame").get<int>();
    if (j.contains("winning_timestamp_s")) {
        f.winning_timestamp_s = j.at("winning_timestamp_s").get<double>();
    }
}

void to_json(json& j, const RunRecord& r) {
    json dropped = json::array();
    for (const auto& [url, reason] : r.dropped) {
        dropped.push_back(json{{"url", url}, {"reason", reason}});
    }
    j = json{
        {"sample_id", r.sample_id},
        {"task", r.task},
        {"queries", r.queries},
        {"candidates", r.candidates},
        {"dropped", dropped},
        {"outcomes", r.outcomes},
        {"verdicts", r.verdicts},
        {"final", r.final},
        {"config_fingerprint", r.config_fingerprint},
        {"stage_timings_ms", r.stage_timings_ms},
        {"error", r.error},
    };
}

void from_json(const json& j, RunRecord& r) {
    j.at("sample_id").get_to(r.sample_id);
    j.at("task").get_to(r.task);
    j.at("queries").get_to(r.queries);
    j.at("candidates").get_to(r.candidates);
    r.dropped.clear();
    for (const auto& item : j.at("dropped")) {
        r.dropped.emplace_back(item.at("url").get<std::string>(),
                               item.at("reason").get<std::string>());
    }
    j.at("outcomes").get_to(r.outcomes);
    j.at("verdicts").get_to(r.verdicts);
    j.at("final").get_to(r.final);
    j.at("config_fingerprint").get_to(r.config_fingerprint);
    j.at("stage_timings_ms").get_to(r.stage_timings_ms);
    j.at("error").get_to(r.error);
}

BenchmarkSample parse_benchmark_sample(const json& j) {
    try {
        if (!j.at("context_description_ch").is_array() ||
            j.at("context_description_ch").size() != 2 ||
            !j.at("context_description_en").is_array() ||
            j.at("context_description_en").size() != 2) {
            throw Error(ErrorKind::MalformedJson, "context_description must be a 2-element array");
        }
        BenchmarkSample s = j.get<BenchmarkSample>();
        if (!is_known_topic(s.category)) {
            throw Error(ErrorKind::MalformedJson, "unknown category: " + s.category);
        }
        if (s.resolution != "1080P" && s.resolution != "720P") {
            throw Error(ErrorKind::MalformedJson, "resolution must be 1080P or 720P");
        }
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedJson, e.what());
    }
}

} // namespace shotscout::model
