import os
import tempfile

import pandas as pd

COLUMNS = ["dataset", "method", "L", "U", "repeat", "error", "test_loss", "train_seconds", "seed"]
supported_formats = ["csv", "jsonl"]


def results_frame(records):
    """Method to convert RepeatResult records to a DataFrame with the result file columns."""
    frame = pd.DataFrame(list(records), columns=COLUMNS)
    return frame.astype(
        {"L": "int64", "U": "int64", "repeat": "int64", "seed": "int64", "error": "float64"}
    )


def atomic_write(path, write):
    """Method to write a file through a temporary sibling and an atomic rename, so failures leave no partial file.

    Parameters
    ----------
    path : str
        Destination path.
    write : function
        write(handle) writes the content to an open text handle.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".%s." % os.path.basename(path), dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            write(handle)

        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)

        raise


def write_results(records, path, format="csv"):
    """Method to write per-repeat results as CSV or JSON lines.

    Parameters
    ----------
    records : list of iclstorch.bench.RepeatResult or pandas.DataFrame
        Results.
    path : str
        Output file.
    format : str
        csv or jsonl.

    Returns
    -------
    pandas.DataFrame
        Written frame.
    """
    if format not in supported_formats:
        raise ValueError(
            "Unknown format '%s'. Valid formats are: %s." % (format, ", ".join(supported_formats))
        )

    frame = records if isinstance(records, pd.DataFrame) else results_frame(records)
    if format == "csv":
        atomic_write(path, lambda handle: frame.to_csv(handle, index=False, float_format="%.17g"))
    else:
        atomic_write(
            path,
            lambda handle: handle.write(
                frame.to_json(orient="records", lines=True, double_precision=15)
                .rstrip("\n")
                + "\n"
            ),
        )

    return frame


def read_results(path):
    """Method to read a result file written by write_results (format inferred from the extension)."""
    if path.endswith(".jsonl"):
        return pd.read_json(path, orient="records", lines=True)

    return pd.read_csv(path)


def write_summary(summary, path):
    """Method to write a summary table as CSV."""
    atomic_write(path, lambda handle: summary.to_csv(handle, index=False, float_format="%.10g"))
    return summary
