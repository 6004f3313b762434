import csv
import json
import math
import sys
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

import numpy as np
from openpyxl import Workbook
from openpyxl.utils import get_column_letter
from pathvalidate import ValidationError, sanitize_filename, validate_filepath

from error_messages import DomainError
from utils import debug_log, flatten_dict, format_number, get_version

type Row = dict[str, object]


@dataclass
class OutputRecord:
    command: str
    parameters: dict[str, object]
    rows: list[Row] = field(default_factory=list)
    status: str = "ok"

    @property
    def field_names(self):
        names: list[str] = []
        for row in self.rows:
            names.extend(name for name in flatten_dict(row) if name not in names)
        return names

    def to_dict(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "rows": self.rows,
            "status": self.status,
            "version": get_version(),
        }

    def export(self, data_format: str, filename: str = ""):
        """
        Writes the record to `filename`, or to standard output without one.
        A filename ending in `.xlsx` always gets an Excel workbook.
        """
        if filename:
            _check_output_path(filename)
            if Path(filename).suffix.lower() == ".xlsx":
                data_format = "excel"
        match data_format:
            case "json":
                self.__write(filename, self.__write_to_json)
            case "excel":
                if not filename:
                    raise DomainError("Excel output needs --output FILE.xlsx")
                self.__write_to_excel(filename, sheet_name=sanitize_filename(self.command)[:31] or "pball")
            case "csv":
                self.__write(filename, self.__write_to_csv)
            case _:
                raise KeyError(f"{data_format!r} is not a valid export format")
        debug_log(f"Wrote {len(self.rows)} {self.command} row(s) as {data_format} to {filename or 'stdout'}")

    @staticmethod
    def __write(filename: str, writer: Callable[[TextIO], None]):
        if not filename:
            writer(sys.stdout)
            return
        with open(filename, "w", newline="", encoding="utf8") as file:
            writer(file)

    def __formatted_rows(self):
        return [{key: format_number(value) for key, value in flatten_dict(row).items()} for row in self.rows]

    def __write_to_csv(self, file: TextIO):
        writer = csv.DictWriter(file, fieldnames=self.field_names, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.__formatted_rows())

    def __write_to_json(self, file: TextIO):
        record = self.to_dict()
        record["parameters"] = {key: _json_value(value) for key, value in self.parameters.items()}
        record["rows"] = [{key: _json_value(value) for key, value in row.items()} for row in self.rows]
        json.dump(record, file, indent=2, ensure_ascii=False)
        file.write("\n")

    def __write_to_excel(self, filepath: str, sheet_name: str):
        workbook = Workbook(write_only=True)
        sheet = workbook.create_sheet(sheet_name)
        field_names = self.field_names
        for index, name in enumerate(field_names):
            sheet.column_dimensions[get_column_letter(index + 1)].width = max(12, len(name) + 2)
        sheet.append(field_names)
        for row in self.rows:
            flattened = flatten_dict(row)
            sheet.append([_excel_value(flattened.get(name)) for name in field_names])
        workbook.save(filepath)


def _json_value(value: object):
    """Numbers stay JSON numbers, in the same text as the CSV output. Non-finite values become strings."""
    if isinstance(value, dict):
        return {key: _json_value(inner) for key, inner in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(inner) for inner in value]
    if value is None or isinstance(value, (bool, str)):
        return value
    text = format_number(value)
    try:
        number = json.loads(text)
    except json.JSONDecodeError:
        return text
    return number


def _excel_value(value: object):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)) and math.isfinite(value):
        return float(value)
    return format_number(value)


def _check_output_path(filename: str):
    try:
        validate_filepath(filename, platform="auto")
    except ValidationError as exception:
        raise DomainError(f"invalid output path {filename!r}: {exception}") from exception
