/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jtnoma {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// A link whose path gain does not exceed its estimation-error variance.
class InfeasibleCsiError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Rates that remain coincident after the deterministic perturbation.
class DegeneracyError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Invalid experiment configuration.
 *
 * Carries the offending key and the 1-based line it came from; line 0 means
 * the value did not come from a configuration document (command-line flag or
 * a cross-key check).
 */
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, int line, const std::string& what)
        : std::runtime_error(format(key, line, what)),
          m_key(std::move(key)),
          m_line(line)
    {
    }

    const std::string& key() const noexcept
    {
        return m_key;
    }

    int line() const noexcept
    {
        return m_line;
    }

  private:
    static std::string format(const std::string& key, int line, const std::string& what)
    {
        std::string msg = "configuration error";
        if (line > 0)
        {
            msg += " at line " + std::to_string(line);
        }
        if (!key.empty())
        {
            msg += " (key '" + key + "')";
        }
        return msg + ": " + what;
    }

    std::string m_key;
    int m_line;
};

} // namespace jtnoma
