// Copyright 2026 Motion Annotation Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "annot/api/http_server.h"

#include <charconv>
#include <thread>

#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "annot/api/json_views.h"
#include "httplib.h"

namespace annot {
namespace api {
namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";
constexpr size_t kMaxLeaderboardPage = 100;

void Send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void SendError(httplib::Response& res, const absl::Status& status) {
  Send(res, HttpStatusFor(status), ErrorJson(status));
}

std::string BearerToken(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() <= kPrefix.size() || !absl::StartsWith(header, "Bearer ")) return "";
  return header.substr(kPrefix.size());
}

absl::StatusOr<json> Body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return absl::InvalidArgumentError("request body must be a JSON object");
  }
  return body;
}

absl::StatusOr<EntryId> EntryField(const json& body) {
  auto it = body.find("entry_id");
  if (it == body.end() || !it->is_number_integer()) {
    return absl::InvalidArgumentError("entry_id must be an integer");
  }
  return EntryId(it->get<int64_t>());
}

absl::StatusOr<std::string> StringField(const json& body, const char* name,
                                        bool required) {
  auto it = body.find(name);
  if (it == body.end()) {
    if (!required) return std::string();
    return absl::InvalidArgumentError(absl::StrCat(name, " is required"));
  }
  if (!it->is_string()) {
    return absl::InvalidArgumentError(absl::StrCat(name, " must be a string"));
  }
  return it->get<std::string>();
}

size_t SizeParam(const httplib::Request& req, const char* name, size_t fallback) {
  if (!req.has_param(name)) return fallback;
  size_t v = 0;
  return absl::SimpleAtoi(req.get_param_value(name), &v) ? v : fallback;
}

}  // namespace

int HttpStatusFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 200;
    case absl::StatusCode::kUnauthenticated:
      return 401;
    case absl::StatusCode::kPermissionDenied:
      return 403;
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 400;
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kFailedPrecondition:
      return 409;
    case absl::StatusCode::kUnavailable:
      return 503;
    default:
      return 500;
  }
}

struct HttpServer::Impl {
  explicit Impl(Platform& p) : platform(p) {}

  Platform& platform;
  httplib::Server server;
  std::thread thread;

  bool AdminAllowed(const httplib::Request& req, httplib::Response& res) {
    const std::string& expected = platform.config().admin_token;
    if (expected.empty() || BearerToken(req) == expected) return true;
    SendError(res, absl::PermissionDeniedError("admin token required"));
    return false;
  }

  void Routes() {
    server.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = Body(req);
      if (!body.ok()) return SendError(res, body.status());
      auto id = StringField(*body, "annotator_id", true);
      if (!id.ok()) return SendError(res, id.status());
      auto name = StringField(*body, "display_name", false);
      if (!name.ok()) return SendError(res, name.status());
      auto session = platform.CreateSession(AnnotatorId(*id), *name);
      if (!session.ok()) return SendError(res, session.status());
      Send(res, 201, SessionJson(*session));
    });

    server.Get("/api/next-motion", [this](const httplib::Request& req, httplib::Response& res) {
      auto next = platform.Next(BearerToken(req));
      if (!next.ok()) return SendError(res, next.status());
      Send(res, 200, NextMotionJson(*next));
    });

    server.Post("/api/annotations", [this](const httplib::Request& req, httplib::Response& res) {
      if (auto a = platform.Authenticate(BearerToken(req)); !a.ok()) {
        return SendError(res, a.status());
      }
      auto body = Body(req);
      if (!body.ok()) return SendError(res, body.status());
      auto entry = EntryField(*body);
      if (!entry.ok()) return SendError(res, entry.status());
      auto text = StringField(*body, "text", true);
      if (!text.ok()) return SendError(res, text.status());
      auto result = platform.Submit(BearerToken(req), *entry, *text);
      if (!result.ok()) return SendError(res, result.status());
      if (result->rejection) return Send(res, 422, RejectionJson(*result->rejection));
      Send(res, 201, SubmitJson(*result));
    });

    server.Post("/api/skip", [this](const httplib::Request& req, httplib::Response& res) {
      if (auto a = platform.Authenticate(BearerToken(req)); !a.ok()) {
        return SendError(res, a.status());
      }
      auto body = Body(req);
      if (!body.ok()) return SendError(res, body.status());
      auto entry = EntryField(*body);
      if (!entry.ok()) return SendError(res, entry.status());
      if (auto s = platform.Skip(BearerToken(req), *entry); !s.ok()) return SendError(res, s);
      res.status = 204;
    });

    server.Post("/api/report", [this](const httplib::Request& req, httplib::Response& res) {
      if (auto a = platform.Authenticate(BearerToken(req)); !a.ok()) {
        return SendError(res, a.status());
      }
      auto body = Body(req);
      if (!body.ok()) return SendError(res, body.status());
      auto entry = EntryField(*body);
      if (!entry.ok()) return SendError(res, entry.status());
      auto note = StringField(*body, "note", false);
      if (!note.ok()) return SendError(res, note.status());
      auto report = platform.Report(BearerToken(req), *entry, *note);
      if (!report.ok()) return SendError(res, report.status());
      Send(res, 201, ReportJson(*report));
    });

    server.Get(R"(/api/motions/(\d+)/frames)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 int64_t id = 0;
                 if (!absl::SimpleAtoi(req.matches[1].str(), &id)) {
                   return SendError(res, absl::NotFoundError("unknown entry"));
                 }
                 double fps = 25.0;
                 if (req.has_param("fps") &&
                     !absl::SimpleAtod(req.get_param_value("fps"), &fps)) {
                   return SendError(res, absl::InvalidArgumentError("fps must be a number"));
                 }
                 auto frames = platform.Frames(EntryId(id), fps);
                 if (!frames.ok()) return SendError(res, frames.status());
                 Send(res, 200, PlaybackJson(*frames));
               });

    server.Get("/api/leaderboard", [this](const httplib::Request& req, httplib::Response& res) {
      const size_t limit =
          std::min(SizeParam(req, "limit", kMaxLeaderboardPage), kMaxLeaderboardPage);
      const size_t offset = SizeParam(req, "offset", 0);
      auto [rows, total] = platform.Leaderboard(limit, offset);
      Send(res, 200, LeaderboardJson(rows, total, offset));
    });

    server.Get("/api/stats", [this](const httplib::Request&, httplib::Response& res) {
      Send(res, 200, StatsJson(platform.Stats()));
    });

    server.Get("/api/releases", [this](const httplib::Request&, httplib::Response& res) {
      json body = {{"api_version", kApiVersion}, {"releases", platform.ReleaseDates()}};
      json& list = body["releases"];
      for (json& date : list) {
        date = {{"date", date},
                {"url", absl::StrCat("/downloads/dataset-", date.get<std::string>(), ".zip")}};
      }
      Send(res, 200, body);
    });

    server.Get(R"(/downloads/dataset-(\d{4}-\d{2}-\d{2})\.zip)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string date = req.matches[1].str();
                 auto archive = platform.Release(date);
                 if (!archive) {
                   return SendError(res, absl::NotFoundError(absl::StrCat("no release ", date)));
                 }
                 res.status = 200;
                 res.set_header("Content-Disposition",
                                absl::StrCat("attachment; filename=\"dataset-", date, ".zip\""));
                 res.set_content(*std::move(archive), "application/zip");
               });

    server.Get("/api/selection", [this](const httplib::Request&, httplib::Response& res) {
      Send(res, 200, SelectionJson(platform.Selection(), platform.strategy_mode()));
    });

    server.Post("/api/admin/recompute", [this](const httplib::Request& req, httplib::Response& res) {
      if (!AdminAllowed(req, res)) return;
      auto summary = platform.Recompute();
      if (!summary.ok()) return SendError(res, summary.status());
      Send(res, 200, RecomputeJson(*summary));
    });

    server.Post("/api/admin/releases", [this](const httplib::Request& req, httplib::Response& res) {
      if (!AdminAllowed(req, res)) return;
      auto body = Body(req);
      if (!body.ok()) return SendError(res, body.status());
      auto date = StringField(*body, "date", true);
      if (!date.ok()) return SendError(res, date.status());
      auto archive = platform.PublishRelease(*date);
      if (!archive.ok()) return SendError(res, archive.status());
      Send(res, 201, {{"api_version", kApiVersion},
                      {"date", *date},
                      {"bytes", archive->size()},
                      {"url", absl::StrCat("/downloads/dataset-", *date, ".zip")}});
    });

    server.Post(R"(/api/admin/motions/(\d+)/clear-problem)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  if (!AdminAllowed(req, res)) return;
                  int64_t id = 0;
                  if (!absl::SimpleAtoi(req.matches[1].str(), &id)) {
                    return SendError(res, absl::NotFoundError("unknown entry"));
                  }
                  if (auto s = platform.ClearProblem(EntryId(id)); !s.ok()) {
                    return SendError(res, s);
                  }
                  res.status = 204;
                });

    server.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string what = "unexpected failure";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            what = e.what();
          } catch (...) {
          }
          SendError(res, absl::InternalError(what));
        });
  }
};

HttpServer::HttpServer(Platform& platform) : impl_(std::make_unique<Impl>(platform)) {
  impl_->Routes();
}

HttpServer::~HttpServer() { Stop(); }

absl::StatusOr<int> HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) return absl::UnavailableError(absl::StrCat("cannot bind ", host));
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    return absl::UnavailableError(absl::StrCat("cannot bind ", host, ":", port));
  }
  return port;
}

void HttpServer::Serve() { impl_->server.listen_after_bind(); }

void HttpServer::Start() {
  impl_->thread = std::thread([this] { Serve(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace api
}  // namespace annot
