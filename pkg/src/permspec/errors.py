"""Exception types shared across the package."""


class DegenerateSeriesError(ValueError):
    """Raised for a constant series: zero sample variance makes the scaled
    intensity (and therefore the test statistic) undefined."""


class CsvParseError(ValueError):
    """Raised when a CSV cell cannot be used as an observation.

    ``row`` is the 1-based row number in the file (header included).
    """

    def __init__(self, path: str, row: int, message: str):
        super().__init__(f"{path}, row {row}: {message}")
        self.path = path
        self.row = row
