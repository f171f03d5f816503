/*
 * Copyright 2026 The propcal Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROPCAL_ERROR_HPP
#define PROPCAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace propcal {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A numeric input lies outside the domain of a formula (non-positive
/// distance, SUI distance not beyond the reference distance, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Two series that must be index-aligned are not.
class AlignmentError : public Error
{
public:
    using Error::Error;
};

/// A statistic is undefined for the given series (empty input, zero variance).
class DegenerateSeriesError : public Error
{
public:
    using Error::Error;
};

/// Malformed input document: bad CSV header, bad JSON, unknown field.
class FormatError : public Error
{
public:
    using Error::Error;
};

/// Well-formed input carrying an invalid value. Messages name row and column.
class ValidationError : public Error
{
public:
    using Error::Error;
};

} // namespace propcal

#endif // PROPCAL_ERROR_HPP
