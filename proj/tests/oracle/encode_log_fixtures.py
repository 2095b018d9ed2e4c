#!/usr/bin/env python3
"""Hand-built ABI-encoded log fixtures with their intended decodings.

The annotation comes first; the bytes are produced by this standalone
encoder, so the C++ decoder is checked against an independent encoding of
the same record. Output: tests/fixtures/abi/decoded_log_fixtures.json
"""

import json
from pathlib import Path

from keccak_oracle import keccak256, topic


def word(value: int) -> bytes:
    return value.to_bytes(32, "big")


def addr_word(address: str) -> bytes:
    return bytes(12) + bytes.fromhex(address[2:])


def enc_string(s: str) -> bytes:
    raw = s.encode()
    padded = raw + bytes((32 - len(raw) % 32) % 32)
    return word(len(raw)) + padded


def enc_bytes(raw: bytes) -> bytes:
    padded = raw + bytes((32 - len(raw) % 32) % 32)
    return word(len(raw)) + padded


def enc_dyn_array(tails: list[bytes], static: bool) -> bytes:
    """Dynamic array body: length word, then inline words (static elements)
    or an offset table plus tails (dynamic elements)."""
    if static:
        return word(len(tails)) + b"".join(tails)
    head = b""
    tail = b""
    offset = 32 * len(tails)
    for t in tails:
        head += word(offset + len(tail))
        tail += t
    return word(len(tails)) + head + tail


def hexify(b: bytes) -> str:
    return "0x" + b.hex()


def bravo_votecast():
    voter = "0x8169522c2c57883e8ef80c498aab7820da539806"
    proposal_id = 43
    support = 1
    votes = 125000 * 10**18 + 123456789
    reason = ""

    head = word(proposal_id) + word(support) + word(votes) + word(4 * 32)
    data = head + enc_string(reason)
    return {
        "name": "bravo_votecast_empty_reason",
        "abi_event": "VoteCast",
        "log": {
            "address": "0xc0da02939e1441f497fd74f78ce7decb17b66529",
            "topics": [topic("VoteCast(address,uint256,uint8,uint256,string)"), hexify(addr_word(voter))],
            "data": hexify(data),
            "blockNumber": "0xf4240",
            "transactionHash": "0x" + keccak256(b"fixture-tx-1").hex(),
            "logIndex": "0x2a",
        },
        "expected": {
            "voter": voter,
            "proposalId": str(proposal_id),
            "support": str(support),
            "votes": str(votes),
            "reason": reason,
        },
    }


def bravo_votecast_with_reason():
    voter = "0x683a4f9915d6216f73d6df50151725036bd26c02"
    proposal_id = 117
    support = 0
    votes = 304112 * 10**18
    reason = "misaligned incentives for LPs"

    head = word(proposal_id) + word(support) + word(votes) + word(4 * 32)
    data = head + enc_string(reason)
    return {
        "name": "bravo_votecast_with_reason",
        "abi_event": "VoteCast",
        "log": {
            "address": "0xc0da02939e1441f497fd74f78ce7decb17b66529",
            "topics": [topic("VoteCast(address,uint256,uint8,uint256,string)"), hexify(addr_word(voter))],
            "data": hexify(data),
            "blockNumber": "0x10c8e42",
            "transactionHash": "0x" + keccak256(b"fixture-tx-2").hex(),
            "logIndex": "0x0",
        },
        "expected": {
            "voter": voter,
            "proposalId": str(proposal_id),
            "support": str(support),
            "votes": str(votes),
            "reason": reason,
        },
    }


def bravo_proposal_created():
    """Exercises the dynamic-array block: address[], uint256[], string[],
    bytes[] plus the trailing description string."""
    proposal_id = 9
    proposer = "0x2b384212edc04ae8bb41738d05ba20e33277bf33"
    targets = ["0xc00e94cb662c3520282e6f5717214004a7f26888",
               "0x3d9819210a31b4961b30ef54be2aed79b9c9cd3b"]
    values = [0, 10**18]
    signatures = ["_setPendingAdmin(address)", ""]
    calldatas = [bytes.fromhex("0000000000000000000000006d903f6003cca6255d85cca4d3b5e5146dc33925"), b""]
    start_block, end_block = 12345678, 12362958
    description = "# Rotate admin\nHand control to the timelock."

    # head: 9 slots (id, proposer, 4 dyn offsets, start, end, desc offset)
    tails = []
    tails.append(enc_dyn_array([addr_word(t) for t in targets], static=True))
    tails.append(enc_dyn_array([word(v) for v in values], static=True))
    tails.append(enc_dyn_array([enc_string(s) for s in signatures], static=False))
    tails.append(enc_dyn_array([enc_bytes(c) for c in calldatas], static=False))
    tails.append(enc_string(description))

    head_size = 9 * 32
    offsets = []
    running = 0
    for t in tails[:4]:
        offsets.append(head_size + running)
        running += len(t)
    desc_offset = head_size + running

    data = (word(proposal_id) + addr_word(proposer)
            + word(offsets[0]) + word(offsets[1]) + word(offsets[2]) + word(offsets[3])
            + word(start_block) + word(end_block) + word(desc_offset)
            + b"".join(tails))

    return {
        "name": "bravo_proposal_created_dynamic_arrays",
        "abi_event": "ProposalCreated",
        "log": {
            "address": "0xc0da02939e1441f497fd74f78ce7decb17b66529",
            "topics": [topic("ProposalCreated(uint256,address,address[],uint256[],string[],bytes[],uint256,uint256,string)")],
            "data": hexify(data),
            "blockNumber": "0xbc614e",
            "transactionHash": "0x" + keccak256(b"fixture-tx-3").hex(),
            "logIndex": "0x7",
        },
        "expected": {
            "id": str(proposal_id),
            "proposer": proposer,
            "targets": targets,
            "values": [str(v) for v in values],
            "signatures": signatures,
            "startBlock": str(start_block),
            "endBlock": str(end_block),
            "description": description,
        },
    }


def main():
    out = Path(__file__).resolve().parent.parent / "fixtures" / "abi" / "decoded_log_fixtures.json"
    fixtures = [bravo_votecast(), bravo_votecast_with_reason(), bravo_proposal_created()]
    with open(out, "w") as fh:
        json.dump(fixtures, fh, indent=1)
        fh.write("\n")
    print(f"wrote {out} ({len(fixtures)} fixtures)")


if __name__ == "__main__":
    main()
