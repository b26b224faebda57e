"""Exception hierarchy shared across the package.

Every error the library raises deliberately derives from CodelexError so the
CLI and the HTTP service can map them to exit codes / status codes in one
place.
"""


class CodelexError(Exception):
    """Base class for all errors raised by codelex."""


class InvalidIdentifier(CodelexError):
    """Identifier is empty or contains characters outside [A-Za-z0-9_]."""


class UnsupportedFileType(CodelexError):
    """File extension is not one of .java, .wsdl, .xml."""


class ParseError(CodelexError):
    """Source text could not be parsed into an interface model."""


class ConfigError(CodelexError):
    """Provider configuration file is invalid."""


class FormatError(CodelexError):
    """A local dictionary file has a malformed line."""


class UnknownProvider(CodelexError):
    """Requested dictionary provider id is not configured."""


class UnsupportedLanguage(CodelexError):
    """Provider does not advertise the requested language code."""


class ProviderUnavailable(CodelexError):
    """Provider could not be contacted and the cache is cold."""


class UnknownTarget(CodelexError):
    """Annotation target method/parameter does not exist in the script."""


class SchemaError(CodelexError):
    """XML document does not conform to the metadata script schema."""


class InvalidRequest(CodelexError):
    """Match request is empty or otherwise unusable."""


class UnknownProject(CodelexError):
    """No project with the given id exists in the store."""
