// SPDX-License-Identifier: Apache-2.0
//
// beamest: beam-domain channel estimation for spatially non-stationary massive MIMO
// Copyright (C) 2026 The beamest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace beamest
{

// Base of every error raised by the library. Callers that do not care about the
// specific failure can catch this one type.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
  public:
    using Error::Error;
};

class RankDeficient : public Error
{
  public:
    using Error::Error;
};

class InvalidParams : public Error
{
  public:
    using Error::Error;
};

class IndexOutOfRange : public Error
{
  public:
    using Error::Error;
};

class ZeroChannel : public Error
{
  public:
    using Error::Error;
};

class ZeroReference : public Error
{
  public:
    using Error::Error;
};

class SupportTooLarge : public Error
{
  public:
    using Error::Error;
};

class InvalidBlockShape : public Error
{
  public:
    using Error::Error;
};

class IoError : public Error
{
  public:
    using Error::Error;
};

// Configuration problems carry the offending key and, when known, the 1-based line.
class ConfigError : public Error
{
  public:
    ConfigError(std::string key, const std::string &what, int line = 0)
        : Error(format(key, what, line)), key_(std::move(key)), line_(line)
    {
    }

    const std::string &key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    static std::string format(const std::string &key, const std::string &what, int line)
    {
        std::string msg = "config key '" + key + "'";
        if (line > 0)
            msg += " (line " + std::to_string(line) + ")";
        return msg + ": " + what;
    }

    std::string key_;
    int line_ = 0;
};

} // namespace beamest
