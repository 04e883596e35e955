/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include "biod/api.hpp"

#include <memory>
#include <string>

namespace biod {

/// HTTP front end for a Service. Every GET goes to Service::handle with the
/// raw, undecoded query string.
class HttpServer {
public:
  explicit HttpServer(std::shared_ptr<const Service> service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket. Port 0 picks a free port. Returns the bound port.
  /// Throws IO_ERROR.
  int bind(const std::string& host, int port);

  /// Serves until stop() is called. Requires a successful bind().
  void run();
  /// Blocks until run() is accepting connections.
  void wait_until_ready() const;
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace biod
