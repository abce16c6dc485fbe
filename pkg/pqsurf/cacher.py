import os
import json
import sqlite3
import logging
from datetime import datetime

from pqsurf.covers import SphericalSystem
from pqsurf.permgroup import FiniteGroup, Permutation


class Cacher:
    """
    Cacher class for enumerated spherical systems.

    Rows are keyed by the group fingerprint and the class-representative tuple, and hold the
    systems exactly as `enumerate_systems` returned them, in order.

    ### Properties:
        `db_path` - Path to the database file.\n
        `logger` - Logger instance.
    """

    def __init__(self, db_path=f'./cache/pqsurf-{datetime.now().strftime("%Y-%m-%d")}.db'):
        self.db_path = db_path
        self.logger = logging.getLogger("pqsurf")

    def setup(self) -> None:
        """
        Creates the cache directory and the systems table if needed.
        """
        directory = os.path.dirname(self.db_path)
        if directory and not os.path.exists(directory):
            self.logger.info(f"Creating cache directory {directory}...")
            os.makedirs(directory)

        conn = self.connect()
        cursor = conn.cursor()

        self.logger.debug("Creating systems table if it doesn't exist...")
        cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS tblSystems (
                group_fingerprint,
                class_key,
                systems_json,
                created,
                PRIMARY KEY (group_fingerprint, class_key)
            );
            """
        )
        conn.commit()
        conn.close()

    def connect(self) -> sqlite3.Connection:
        return sqlite3.connect(self.db_path)

    @staticmethod
    def class_key(group: FiniteGroup, class_reps: list[Permutation]) -> str:
        return json.dumps([group.class_index(c) for c in class_reps])

    def get_systems(self, group: FiniteGroup, class_reps: list[Permutation]) -> list[SphericalSystem] | None:
        """
        Gets cached systems for the given classes.

        ### Returns:
            `list[SphericalSystem] | None` : The cached systems, or `None` on a miss.
        """
        conn = self.connect()
        cursor = conn.cursor()
        cursor.execute(
            "SELECT systems_json FROM tblSystems WHERE group_fingerprint = ? AND class_key = ?",
            (group.fingerprint, self.class_key(group, class_reps)),
        )
        row = cursor.fetchone()
        conn.close()

        if row is None:
            self.logger.debug(f"Cache miss for {group.name} classes {self.class_key(group, class_reps)}")
            return None

        systems = [
            SphericalSystem(group, [Permutation(images, check=False) for images in elements])
            for elements in json.loads(row[0])
        ]
        self.logger.info(f"Cache hit: {len(systems)} systems for {group.name}")
        return systems

    def insert_systems(self, group: FiniteGroup, class_reps: list[Permutation], systems: list[SphericalSystem]) -> None:
        """
        Inserts (or replaces) the systems for the given classes.
        """
        payload = json.dumps([[list(g.images) for g in s] for s in systems])
        conn = self.connect()
        cursor = conn.cursor()
        cursor.execute(
            "INSERT OR REPLACE INTO tblSystems VALUES (?, ?, ?, ?)",
            (group.fingerprint, self.class_key(group, class_reps), payload, datetime.now().isoformat()),
        )
        conn.commit()
        self.logger.debug(f"Inserted {len(systems)} systems into tblSystems ({cursor.rowcount} row)")
        conn.close()

    def drop_tables(self, tables: list[str] = ["tblSystems"]) -> None:
        """
        Drops the specified tables from the cache database.
        """
        conn = self.connect()
        cursor = conn.cursor()
        for table in tables:
            self.logger.debug(f"Dropping table {table}...")
            cursor.execute(f"DROP TABLE IF EXISTS {table};")
        conn.commit()
        conn.close()
