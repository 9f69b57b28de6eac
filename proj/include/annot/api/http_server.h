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

#ifndef ANNOT_API_HTTP_SERVER_H_
#define ANNOT_API_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "absl/status/status.h"
#include "annot/api/platform.h"

namespace annot {
namespace api {

// HTTP+JSON front end of a Platform:
//   POST /api/sessions                    {annotator_id, display_name?}
//   GET  /api/next-motion
//   POST /api/annotations                 {entry_id, text}
//   POST /api/skip                        {entry_id}
//   POST /api/report                      {entry_id, note}
//   GET  /api/motions/{id}/frames?fps=25
//   GET  /api/leaderboard?limit=100&offset=0
//   GET  /api/stats
//   GET  /api/releases
//   GET  /downloads/dataset-{date}.zip
//   GET  /api/selection
//   POST /api/admin/recompute
//   POST /api/admin/releases              {date}
//   POST /api/admin/motions/{id}/clear-problem
// Sessions are passed as "Authorization: Bearer <token>".
class HttpServer {
 public:
  explicit HttpServer(Platform& platform);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port; port 0 picks a free one.
  absl::StatusOr<int> Bind(const std::string& host, int port);
  // Serves until Stop(). Call after Bind().
  void Serve();
  // Serve() on a background thread.
  void Start();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

int HttpStatusFor(const absl::Status& status);

}  // namespace api
}  // namespace annot

#endif  // ANNOT_API_HTTP_SERVER_H_
