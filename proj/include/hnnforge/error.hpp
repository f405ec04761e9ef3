#ifndef HNNFORGE_ERROR_HPP_
#define HNNFORGE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hnnforge {

  // Every library error derives from Error and carries a stable code string;
  // the CLI maps codes to exit statuses and structured stderr output.
  class Error : public std::runtime_error {
   public:
    Error(std::string code, std::string const& message)
        : std::runtime_error(message), _code(std::move(code)) {}

    [[nodiscard]] std::string const& code() const noexcept {
      return _code;
    }

   private:
    std::string _code;
  };

#define HNNFORGE_DEFINE_ERROR(Name)                      \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(std::string const& message)            \
        : Error(#Name, message) {}                       \
  }

  HNNFORGE_DEFINE_ERROR(AlphabetMismatch);
  HNNFORGE_DEFINE_ERROR(MissingImage);
  HNNFORGE_DEFINE_ERROR(InvalidName);
  HNNFORGE_DEFINE_ERROR(NotInSubgroup);
  HNNFORGE_DEFINE_ERROR(UnsupportedClass);
  HNNFORGE_DEFINE_ERROR(UnsupportedFactorClass);
  HNNFORGE_DEFINE_ERROR(InvalidTable);
  HNNFORGE_DEFINE_ERROR(InvalidIso);
  HNNFORGE_DEFINE_ERROR(StableLetterClash);
  HNNFORGE_DEFINE_ERROR(AlphabetCollision);
  HNNFORGE_DEFINE_ERROR(OracleFailure);
  HNNFORGE_DEFINE_ERROR(InvalidGraphOfGroups);
  HNNFORGE_DEFINE_ERROR(NotConnected);
  HNNFORGE_DEFINE_ERROR(RadiusTooLarge);
  HNNFORGE_DEFINE_ERROR(InvalidIndex);
  HNNFORGE_DEFINE_ERROR(OutOfTruncationRange);
  HNNFORGE_DEFINE_ERROR(InvalidInput);

#undef HNNFORGE_DEFINE_ERROR

  //! Byte offsets [start, end) into a parsed input.
  struct SourceSpan {
    std::size_t start = 0;
    std::size_t end   = 0;
  };

  class ParseError : public Error {
   public:
    ParseError(SourceSpan span, std::string const& message)
        : ParseError("ParseError", span, message) {}

    [[nodiscard]] SourceSpan span() const noexcept {
      return _span;
    }

   protected:
    ParseError(std::string code, SourceSpan span, std::string const& message)
        : Error(std::move(code), message), _span(span) {}

   private:
    SourceSpan _span;
  };

  class UnknownGenerator : public ParseError {
   public:
    UnknownGenerator(SourceSpan span, std::string const& name)
        : ParseError("UnknownGenerator",
                     span,
                     "unknown generator '" + name + "'") {}
  };

}  // namespace hnnforge

#endif  // HNNFORGE_ERROR_HPP_
