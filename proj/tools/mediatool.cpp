// mediatool: self-contained media helper used by the pipeline as its
// frame/audio extraction subprocess.
//
//   mediatool probe  <file>                          -> JSON on stdout
//   mediatool frame  <file> <t_seconds> <out.jpg>
//   mediatool frames <file> <out_dir> <t1,t2,...>    -> frame_0000.jpg ...
//   mediatool audio  <file> <out.mp3> [start dur]    -> full track when no window
//   mediatool synth  <out.mp4> <duration_s> [seed]   -> synthetic test clip
//
// Exit code 0 on success; diagnostics go to stderr.

extern "C" {
#include <libavcodec/avcodec.h>
#include <libavformat/avformat.h>
#include <libavutil/audio_fifo.h>
#include <libavutil/imgutils.h>
#include <libavutil/opt.h>
#include <libswresample/swresample.h>
#include <libswscale/swscale.h>
}

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using nlohmann::json;

[[noreturn]] void fatal(const std::string& msg) {
    std::fprintf(stderr, "mediatool: %s\n", msg.c_str());
    std::exit(1);
}

std::string av_err(int rc) {
    char buf[AV_ERROR_MAX_STRING_SIZE] = {0};
    av_strerror(rc, buf, sizeof(buf));
    return buf;
}

struct Input {
    AVFormatContext* fmt = nullptr;
    int stream_index = -1;
    AVCodecContext* dec = nullptr;

    AVStream* stream() const { return fmt->streams[stream_index]; }

    ~Input() {
        if (dec) avcodec_free_context(&dec);
        if (fmt) avformat_close_input(&fmt);
    }
};

void open_input(Input& in, const std::string& path, AVMediaType type) {
    int rc = avformat_open_input(&in.fmt, path.c_str(), nullptr, nullptr);
    if (rc < 0) fatal("cannot open " + path + ": " + av_err(rc));
    rc = avformat_find_stream_info(in.fmt, nullptr);
    if (rc < 0) fatal("no stream info in " + path + ": " + av_err(rc));
    in.stream_index = av_find_best_stream(in.fmt, type, -1, -1, nullptr, 0);
    if (in.stream_index < 0) {
        fatal(std::string("no ") + (type == AVMEDIA_TYPE_VIDEO ? "video" : "audio") +
              " stream in " + path);
    }
    const AVCodec* codec = avcodec_find_decoder(in.stream()->codecpar->codec_id);
    if (!codec) fatal("no decoder for stream");
    in.dec = avcodec_alloc_context3(codec);
    avcodec_parameters_to_context(in.dec, in.stream()->codecpar);
    rc = avcodec_open2(in.dec, codec, nullptr);
    if (rc < 0) fatal("cannot open decoder: " + av_err(rc));
}

double stream_time(const AVStream* st, int64_t ts) {
    int64_t start = st->start_time == AV_NOPTS_VALUE ? 0 : st->start_time;
    return (ts - start) * av_q2d(st->time_base);
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

int cmd_probe(const std::string& path) {
    AVFormatContext* fmt = nullptr;
    int rc = avformat_open_input(&fmt, path.c_str(), nullptr, nullptr);
    if (rc < 0) fatal("cannot open " + path + ": " + av_err(rc));
    rc = avformat_find_stream_info(fmt, nullptr);
    if (rc < 0) fatal("no stream info: " + av_err(rc));

    double duration = 0.0;
    if (fmt->duration != AV_NOPTS_VALUE) {
        duration = static_cast<double>(fmt->duration) / AV_TIME_BASE;
    }
    int width = 0, height = 0;
    bool has_audio = false;
    for (unsigned i = 0; i < fmt->nb_streams; ++i) {
        const AVCodecParameters* par = fmt->streams[i]->codecpar;
        if (par->codec_type == AVMEDIA_TYPE_VIDEO && width == 0) {
            width = par->width;
            height = par->height;
            if (duration <= 0 && fmt->streams[i]->duration != AV_NOPTS_VALUE) {
                duration = fmt->streams[i]->duration * av_q2d(fmt->streams[i]->time_base);
            }
        }
        if (par->codec_type == AVMEDIA_TYPE_AUDIO) has_audio = true;
    }

    json out = {
        {"ok", true},
        {"duration_s", duration},
        {"width", width},
        {"height", height},
        {"has_audio", has_audio},
        {"format", fmt->iformat->name},
    };
    std::printf("%s\n", out.dump().c_str());
    avformat_close_input(&fmt);
    return 0;
}

// ---------------------------------------------------------------------------
// frame / frames
// ---------------------------------------------------------------------------

void write_jpeg(const AVFrame* frame, const std::string& out_path) {
    const AVCodec* codec = avcodec_find_encoder(AV_CODEC_ID_MJPEG);
    if (!codec) fatal("mjpeg encoder missing");
    AVCodecContext* enc = avcodec_alloc_context3(codec);
    enc->width = frame->width;
    enc->height = frame->height;
    enc->pix_fmt = AV_PIX_FMT_YUVJ420P;
    enc->time_base = {1, 25};
    enc->flags |= AV_CODEC_FLAG_QSCALE;
    enc->global_quality = FF_QP2LAMBDA * 2;
    int rc = avcodec_open2(enc, codec, nullptr);
    if (rc < 0) fatal("cannot open mjpeg encoder: " + av_err(rc));

    AVFrame* yuv = av_frame_alloc();
    yuv->width = frame->width;
    yuv->height = frame->height;
    yuv->format = AV_PIX_FMT_YUVJ420P;
    av_frame_get_buffer(yuv, 0);

    SwsContext* sws =
        sws_getContext(frame->width, frame->height, static_cast<AVPixelFormat>(frame->format),
                       yuv->width, yuv->height, AV_PIX_FMT_YUVJ420P, SWS_BILINEAR, nullptr,
                       nullptr, nullptr);
    if (!sws) fatal("sws_getContext failed");
    sws_scale(sws, frame->data, frame->linesize, 0, frame->height, yuv->data, yuv->linesize);
    yuv->pts = 0;

    rc = avcodec_send_frame(enc, yuv);
    if (rc < 0) fatal("jpeg encode failed: " + av_err(rc));
    avcodec_send_frame(enc, nullptr);

    AVPacket* pkt = av_packet_alloc();
    rc = avcodec_receive_packet(enc, pkt);
    if (rc < 0) fatal("jpeg encode produced no packet: " + av_err(rc));

    FILE* f = std::fopen(out_path.c_str(), "wb");
    if (!f) fatal("cannot write " + out_path);
    std::fwrite(pkt->data, 1, pkt->size, f);
    std::fclose(f);

    av_packet_free(&pkt);
    sws_freeContext(sws);
    av_frame_free(&yuv);
    avcodec_free_context(&enc);
}

// Decodes the frame nearest to t (seconds). Returns a cloned frame the caller
// must free, or nullptr when the stream has no decodable frame at all.
AVFrame* decode_frame_at(Input& in, double t) {
    AVStream* st = in.stream();
    int64_t start = st->start_time == AV_NOPTS_VALUE ? 0 : st->start_time;
    int64_t target = start + llrint(t / av_q2d(st->time_base));
    av_seek_frame(in.fmt, in.stream_index, target, AVSEEK_FLAG_BACKWARD);
    avcodec_flush_buffers(in.dec);

    AVPacket* pkt = av_packet_alloc();
    AVFrame* frame = av_frame_alloc();
    AVFrame* best = nullptr;
    double best_dt = 1e30;
    bool done = false;

    auto consider = [&](AVFrame* f) {
        int64_t ts = f->best_effort_timestamp;
        if (ts == AV_NOPTS_VALUE) ts = f->pts;
        double tf = stream_time(st, ts);
        double dt = std::abs(tf - t);
        if (dt < best_dt) {
            if (best) av_frame_free(&best);
            best = av_frame_clone(f);
            best_dt = dt;
        }
        if (tf >= t) done = true;  // frames arrive in order; nothing closer follows
    };

    while (!done && av_read_frame(in.fmt, pkt) >= 0) {
        if (pkt->stream_index == in.stream_index) {
            if (avcodec_send_packet(in.dec, pkt) >= 0) {
                while (avcodec_receive_frame(in.dec, frame) >= 0) consider(frame);
            }
        }
        av_packet_unref(pkt);
    }
    if (!done) {  // flush decoder at EOF
        avcodec_send_packet(in.dec, nullptr);
        while (avcodec_receive_frame(in.dec, frame) >= 0) consider(frame);
    }

    av_frame_free(&frame);
    av_packet_free(&pkt);
    return best;
}

int cmd_frame(const std::string& path, double t, const std::string& out_path) {
    Input in;
    open_input(in, path, AVMEDIA_TYPE_VIDEO);
    AVFrame* frame = decode_frame_at(in, t);
    if (!frame) fatal("no decodable frame near t=" + std::to_string(t));
    write_jpeg(frame, out_path);
    av_frame_free(&frame);
    std::printf("%s\n", json{{"ok", true}, {"written", 1}}.dump().c_str());
    return 0;
}

int cmd_frames(const std::string& path, const std::string& out_dir, const std::string& times_csv) {
    std::vector<double> times;
    size_t pos = 0;
    while (pos <= times_csv.size()) {
        size_t comma = times_csv.find(',', pos);
        if (comma == std::string::npos) comma = times_csv.size();
        std::string tok = times_csv.substr(pos, comma - pos);
        if (!tok.empty()) times.push_back(std::stod(tok));
        pos = comma + 1;
    }
    if (times.empty()) fatal("no timestamps given");

    std::filesystem::create_directories(out_dir);
    Input in;
    open_input(in, path, AVMEDIA_TYPE_VIDEO);
    int written = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        AVFrame* frame = decode_frame_at(in, times[i]);
        if (!frame) fatal("no decodable frame near t=" + std::to_string(times[i]));
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu.jpg", i);
        write_jpeg(frame, (std::filesystem::path(out_dir) / name).string());
        av_frame_free(&frame);
        ++written;
    }
    std::printf("%s\n", json{{"ok", true}, {"written", written}}.dump().c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// audio
// ---------------------------------------------------------------------------

int cmd_audio(const std::string& path, const std::string& out_path, double start, double dur) {
    Input in;
    open_input(in, path, AVMEDIA_TYPE_AUDIO);

    const AVCodec* codec = avcodec_find_encoder(AV_CODEC_ID_MP3);
    if (!codec) fatal("mp3 encoder missing");

    const int out_rate = 44100;
    const int out_channels = in.dec->channels >= 2 ? 2 : 1;
    const AVSampleFormat out_fmt = AV_SAMPLE_FMT_S16P;

    AVFormatContext* ofmt = nullptr;
    int rc = avformat_alloc_output_context2(&ofmt, nullptr, nullptr, out_path.c_str());
    if (rc < 0 || !ofmt) fatal("cannot create output " + out_path);

    AVCodecContext* enc = avcodec_alloc_context3(codec);
    enc->sample_rate = out_rate;
    enc->channels = out_channels;
    enc->channel_layout = av_get_default_channel_layout(out_channels);
    enc->sample_fmt = out_fmt;
    enc->bit_rate = 128000;
    enc->time_base = {1, out_rate};
    if (ofmt->oformat->flags & AVFMT_GLOBALHEADER) enc->flags |= AV_CODEC_FLAG_GLOBAL_HEADER;
    rc = avcodec_open2(enc, codec, nullptr);
    if (rc < 0) fatal("cannot open mp3 encoder: " + av_err(rc));

    AVStream* ost = avformat_new_stream(ofmt, nullptr);
    avcodec_parameters_from_context(ost->codecpar, enc);
    ost->time_base = enc->time_base;

    rc = avio_open(&ofmt->pb, out_path.c_str(), AVIO_FLAG_WRITE);
    if (rc < 0) fatal("cannot open " + out_path + ": " + av_err(rc));
    rc = avformat_write_header(ofmt, nullptr);
    if (rc < 0) fatal("write_header failed: " + av_err(rc));

    int64_t in_layout = in.dec->channel_layout
                            ? in.dec->channel_layout
                            : av_get_default_channel_layout(in.dec->channels);
    SwrContext* swr = swr_alloc_set_opts(nullptr, enc->channel_layout, out_fmt, out_rate,
                                         in_layout, in.dec->sample_fmt, in.dec->sample_rate,
                                         0, nullptr);
    if (!swr || swr_init(swr) < 0) fatal("swr_init failed");

    AVAudioFifo* fifo = av_audio_fifo_alloc(out_fmt, out_channels, enc->frame_size * 4);

    const bool windowed = dur > 0;
    if (windowed && start > 0) {
        AVStream* st = in.stream();
        int64_t st_start = st->start_time == AV_NOPTS_VALUE ? 0 : st->start_time;
        av_seek_frame(in.fmt, in.stream_index, st_start + llrint(start / av_q2d(st->time_base)),
                      AVSEEK_FLAG_BACKWARD);
        avcodec_flush_buffers(in.dec);
    }
    const int64_t max_out_samples = windowed ? llrint(dur * out_rate) : INT64_MAX;

    int64_t next_pts = 0;     // samples handed to the encoder
    int64_t queued = 0;       // samples pushed into the fifo
    AVPacket* opkt = av_packet_alloc();

    auto drain_encoder = [&](bool flushing) {
        while (true) {
            int r = avcodec_receive_packet(enc, opkt);
            if (r == AVERROR(EAGAIN) || r == AVERROR_EOF) break;
            if (r < 0) fatal("mp3 encode failed: " + av_err(r));
            av_packet_rescale_ts(opkt, enc->time_base, ost->time_base);
            opkt->stream_index = ost->index;
            av_interleaved_write_frame(ofmt, opkt);
        }
        (void)flushing;
    };

    auto encode_from_fifo = [&](bool flushing) {
        while (av_audio_fifo_size(fifo) >= enc->frame_size ||
               (flushing && av_audio_fifo_size(fifo) > 0)) {
            int take = std::min(av_audio_fifo_size(fifo), enc->frame_size);
            AVFrame* af = av_frame_alloc();
            af->nb_samples = enc->frame_size;  // pad the tail with silence
            af->format = out_fmt;
            af->channel_layout = enc->channel_layout;
            af->sample_rate = out_rate;
            av_frame_get_buffer(af, 0);
            av_samples_set_silence(af->data, 0, enc->frame_size, out_channels, out_fmt);
            av_audio_fifo_read(fifo, reinterpret_cast<void**>(af->data), take);
            af->pts = next_pts;
            next_pts += take;
            if (avcodec_send_frame(enc, af) < 0) fatal("send_frame failed");
            av_frame_free(&af);
            drain_encoder(false);
            if (flushing && av_audio_fifo_size(fifo) == 0) break;
        }
    };

    AVPacket* pkt = av_packet_alloc();
    AVFrame* frame = av_frame_alloc();
    std::vector<uint8_t*> conv(out_channels, nullptr);
    bool done = false;
    while (!done && av_read_frame(in.fmt, pkt) >= 0) {
        if (pkt->stream_index == in.stream_index && avcodec_send_packet(in.dec, pkt) >= 0) {
            while (avcodec_receive_frame(in.dec, frame) >= 0) {
                if (windowed) {
                    double tf = stream_time(in.stream(), frame->best_effort_timestamp);
                    if (tf + static_cast<double>(frame->nb_samples) / in.dec->sample_rate < start)
                        continue;
                }
                int out_cap = static_cast<int>(av_rescale_rnd(
                    swr_get_delay(swr, in.dec->sample_rate) + frame->nb_samples, out_rate,
                    in.dec->sample_rate, AV_ROUND_UP));
                uint8_t** data = conv.data();
                av_samples_alloc(data, nullptr, out_channels, out_cap, out_fmt, 0);
                int got = swr_convert(swr, data, out_cap,
                                      const_cast<const uint8_t**>(frame->extended_data),
                                      frame->nb_samples);
                if (got > 0) {
                    if (queued + got > max_out_samples) {
                        got = static_cast<int>(max_out_samples - queued);
                        done = true;
                    }
                    if (got > 0) {
                        av_audio_fifo_write(fifo, reinterpret_cast<void**>(data), got);
                        queued += got;
                    }
                }
                av_freep(&data[0]);
                encode_from_fifo(false);
                if (done) break;
            }
        }
        av_packet_unref(pkt);
    }

    encode_from_fifo(true);
    avcodec_send_frame(enc, nullptr);
    drain_encoder(true);
    av_write_trailer(ofmt);

    double emitted = static_cast<double>(next_pts) / out_rate;
    std::printf("%s\n", json{{"ok", true}, {"duration_s", emitted}}.dump().c_str());

    av_frame_free(&frame);
    av_packet_free(&pkt);
    av_packet_free(&opkt);
    av_audio_fifo_free(fifo);
    swr_free(&swr);
    avio_closep(&ofmt->pb);
    avcodec_free_context(&enc);
    avformat_free_context(ofmt);
    return 0;
}

// ---------------------------------------------------------------------------
// synth: deterministic moving-pattern video + sine audio, for tests/fixtures
// ---------------------------------------------------------------------------

int cmd_synth(const std::string& out_path, double duration, int seed) {
    const int width = 320, height = 180, fps = 12;
    const int rate = 44100;
    const int nframes = std::max(1, static_cast<int>(llrint(duration * fps)));
    const int64_t nsamples = llrint(duration * rate);
    const double freq = 220.0 + 20.0 * (seed % 16);

    AVFormatContext* ofmt = nullptr;
    int rc = avformat_alloc_output_context2(&ofmt, nullptr, nullptr, out_path.c_str());
    if (rc < 0 || !ofmt) fatal("cannot create " + out_path);

    // video stream
    const AVCodec* vcodec = avcodec_find_encoder(AV_CODEC_ID_MPEG4);
    AVCodecContext* venc = avcodec_alloc_context3(vcodec);
    venc->width = width;
    venc->height = height;
    venc->pix_fmt = AV_PIX_FMT_YUV420P;
    venc->time_base = {1, fps};
    venc->gop_size = fps;
    venc->flags |= AV_CODEC_FLAG_QSCALE;
    venc->global_quality = FF_QP2LAMBDA * 4;
    if (ofmt->oformat->flags & AVFMT_GLOBALHEADER) venc->flags |= AV_CODEC_FLAG_GLOBAL_HEADER;
    if (avcodec_open2(venc, vcodec, nullptr) < 0) fatal("cannot open mpeg4 encoder");
    AVStream* vst = avformat_new_stream(ofmt, nullptr);
    avcodec_parameters_from_context(vst->codecpar, venc);
    vst->time_base = venc->time_base;

    // audio stream
    const AVCodec* acodec = avcodec_find_encoder(AV_CODEC_ID_AAC);
    AVCodecContext* aenc = avcodec_alloc_context3(acodec);
    aenc->sample_rate = rate;
    aenc->channels = 1;
    aenc->channel_layout = AV_CH_LAYOUT_MONO;
    aenc->sample_fmt = AV_SAMPLE_FMT_FLTP;
    aenc->bit_rate = 64000;
    aenc->time_base = {1, rate};
    if (ofmt->oformat->flags & AVFMT_GLOBALHEADER) aenc->flags |= AV_CODEC_FLAG_GLOBAL_HEADER;
    if (avcodec_open2(aenc, acodec, nullptr) < 0) fatal("cannot open aac encoder");
    AVStream* ast = avformat_new_stream(ofmt, nullptr);
    avcodec_parameters_from_context(ast->codecpar, aenc);
    ast->time_base = aenc->time_base;

    rc = avio_open(&ofmt->pb, out_path.c_str(), AVIO_FLAG_WRITE);
    if (rc < 0) fatal("cannot open " + out_path + ": " + av_err(rc));
    if (avformat_write_header(ofmt, nullptr) < 0) fatal("write_header failed");

    AVPacket* pkt = av_packet_alloc();
    auto pump = [&](AVCodecContext* enc, AVStream* st) {
        while (true) {
            int r = avcodec_receive_packet(enc, pkt);
            if (r == AVERROR(EAGAIN) || r == AVERROR_EOF) break;
            if (r < 0) fatal("encode failed: " + av_err(r));
            av_packet_rescale_ts(pkt, enc->time_base, st->time_base);
            pkt->stream_index = st->index;
            av_interleaved_write_frame(ofmt, pkt);
        }
    };

    // video frames: hue ramp background + moving bright square, seed-shifted
    AVFrame* vf = av_frame_alloc();
    vf->width = width;
    vf->height = height;
    vf->format = AV_PIX_FMT_YUV420P;
    av_frame_get_buffer(vf, 0);
    for (int n = 0; n < nframes; ++n) {
        av_frame_make_writable(vf);
        double phase = 2.0 * M_PI * (n + seed * 7) / 48.0;
        uint8_t base_y = static_cast<uint8_t>(90 + 40 * std::sin(phase));
        uint8_t u = static_cast<uint8_t>(128 + 80 * std::sin(phase * 0.5 + seed));
        uint8_t v = static_cast<uint8_t>(128 + 80 * std::cos(phase * 0.7 + seed));
        for (int y = 0; y < height; ++y)
            std::memset(vf->data[0] + y * vf->linesize[0], base_y, width);
        for (int y = 0; y < height / 2; ++y) {
            std::memset(vf->data[1] + y * vf->linesize[1], u, width / 2);
            std::memset(vf->data[2] + y * vf->linesize[2], v, width / 2);
        }
        int sq = 36;
        int x0 = (n * 7 + seed * 13) % (width - sq);
        int y0 = (n * 5 + seed * 11) % (height - sq);
        for (int y = y0; y < y0 + sq; ++y)
            std::memset(vf->data[0] + y * vf->linesize[0] + x0, 235, sq);
        vf->pts = n;
        if (avcodec_send_frame(venc, vf) < 0) fatal("video send_frame failed");
        pump(venc, vst);
    }
    avcodec_send_frame(venc, nullptr);
    pump(venc, vst);

    // audio: mono sine
    AVFrame* af = av_frame_alloc();
    af->nb_samples = aenc->frame_size > 0 ? aenc->frame_size : 1024;
    af->format = AV_SAMPLE_FMT_FLTP;
    af->channel_layout = AV_CH_LAYOUT_MONO;
    af->sample_rate = rate;
    av_frame_get_buffer(af, 0);
    int64_t s = 0;
    while (s < nsamples) {
        av_frame_make_writable(af);
        int chunk = static_cast<int>(std::min<int64_t>(af->nb_samples, nsamples - s));
        float* samples = reinterpret_cast<float*>(af->data[0]);
        for (int i = 0; i < chunk; ++i)
            samples[i] = 0.25f * std::sin(2.0 * M_PI * freq * (s + i) / rate);
        for (int i = chunk; i < af->nb_samples; ++i) samples[i] = 0.0f;
        af->pts = s;
        s += chunk;
        if (avcodec_send_frame(aenc, af) < 0) fatal("audio send_frame failed");
        pump(aenc, ast);
    }
    avcodec_send_frame(aenc, nullptr);
    pump(aenc, ast);

    av_write_trailer(ofmt);

    std::printf("%s\n",
                json{{"ok", true}, {"frames", nframes}, {"samples", nsamples}}.dump().c_str());

    av_packet_free(&pkt);
    av_frame_free(&vf);
    av_frame_free(&af);
    avio_closep(&ofmt->pb);
    avcodec_free_context(&venc);
    avcodec_free_context(&aenc);
    avformat_free_context(ofmt);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    av_log_set_level(AV_LOG_ERROR);
    if (argc < 2) fatal("usage: mediatool probe|frame|frames|audio|synth ...");
    std::string cmd = argv[1];
    try {
        if (cmd == "probe" && argc == 3) return cmd_probe(argv[2]);
        if (cmd == "frame" && argc == 5) return cmd_frame(argv[2], std::stod(argv[3]), argv[4]);
        if (cmd == "frames" && argc == 5) return cmd_frames(argv[2], argv[3], argv[4]);
        if (cmd == "audio" && (argc == 4 || argc == 6)) {
            double start = argc == 6 ? std::stod(argv[4]) : 0.0;
            double dur = argc == 6 ? std::stod(argv[5]) : 0.0;
            return cmd_audio(argv[2], argv[3], start, dur);
        }
        if (cmd == "synth" && (argc == 4 || argc == 5)) {
            int seed = argc == 5 ? std::atoi(argv[4]) : 0;
            return cmd_synth(argv[2], std::stod(argv[3]), seed);
        }
    } catch (const std::exception& e) {
        fatal(e.what());
    }
    fatal("bad arguments for subcommand '" + cmd + "'");
}
