class DegenerateBranchError(ArithmeticError):
    """A measurement branch with (numerically) zero probability was selected."""


class DatasetError(ValueError):
    """Malformed +-1 dataset input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
